//! Sparse multilinear polynomials over named, block-tagged variables, and
//! square systems of them.
//!
//! Monomial keys are sets of variable indices (squarefree by construction);
//! coefficients are exact rationals; zero coefficients are never stored. A
//! [`PolySystem`] pairs one equation with one variable: equation `k` is "the
//! equation of vertex `k`" of a polynomial graph, and variable `k` is that
//! vertex's coordinate.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::PolynomialGraph;
use crate::numerics::{format_rational, BigRational, RationalMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultilinearError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    UnassignedVariable(String),
    #[error("monomial {0} uses two variables of block {1}; not linear over that block")]
    NotBlockLinear(String, usize),
    #[error("expected one distinguished variable per block ({want}), got {got}")]
    DistinguishedArity { want: usize, got: usize },
    #[error("distinguished variable `{var}` does not belong to block {block}")]
    DistinguishedBlockMismatch { var: String, block: usize },
    #[error("{got} equations over {want} variables; systems must be square")]
    NotSquare { got: usize, want: usize },
    #[error("variable `{0}` has no image in the target space")]
    UnmappedVariable(String),
}

/// The variable universe of a system: names and a block tag per variable.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSpace {
    names: Vec<String>,
    blocks: Vec<usize>,
    by_name: BTreeMap<String, usize>,
    n_blocks: usize,
}

impl VarSpace {
    /// Builds a space from `(name, block)` pairs. Block ids must cover
    /// `0..n_blocks` without gaps.
    pub fn new(vars: Vec<(String, usize)>) -> Result<Arc<Self>, MultilinearError> {
        let mut by_name = BTreeMap::new();
        let mut names = Vec::with_capacity(vars.len());
        let mut blocks = Vec::with_capacity(vars.len());
        for (i, (name, block)) in vars.into_iter().enumerate() {
            if by_name.insert(name.clone(), i).is_some() {
                return Err(MultilinearError::DuplicateVariable(name));
            }
            names.push(name);
            blocks.push(block);
        }
        let n_blocks = blocks.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..n_blocks {
            assert!(blocks.contains(&b), "block ids must be contiguous from zero");
        }
        Ok(Arc::new(VarSpace {
            names,
            blocks,
            by_name,
            n_blocks,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn block(&self, v: usize) -> usize {
        self.blocks[v]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn block_members(&self, block: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.blocks[v] == block).collect()
    }
}

/// A set of variable indices, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn constant() -> Self {
        Monomial(Vec::new())
    }

    /// Panics if a variable repeats: monomials are squarefree by contract.
    pub fn from_vars(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        for pair in vars.windows(2) {
            assert_ne!(pair[0], pair[1], "monomials are squarefree");
        }
        Monomial(vars)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Union of two disjoint monomials; panics if they share a variable.
    fn merge_disjoint(&self, other: &Monomial) -> Monomial {
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        merged.extend_from_slice(&self.0);
        merged.extend_from_slice(&other.0);
        Monomial::from_vars(merged)
    }

    fn without(&self, v: usize) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&w| w != v).collect())
    }
}

/// Values for (a subset of) a space's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    space: Arc<VarSpace>,
    values: Vec<Option<BigRational>>,
}

impl Assignment {
    pub fn empty(space: &Arc<VarSpace>) -> Self {
        Assignment {
            space: Arc::clone(space),
            values: vec![None; space.len()],
        }
    }

    pub fn set(&mut self, var: usize, value: BigRational) {
        self.values[var] = Some(value);
    }

    /// Resolves a name → value map against the space; unknown names error.
    pub fn from_named(
        space: &Arc<VarSpace>,
        values: &BTreeMap<String, BigRational>,
    ) -> Result<Self, MultilinearError> {
        let mut assignment = Assignment::empty(space);
        for (name, value) in values {
            let var = space
                .lookup(name)
                .ok_or_else(|| MultilinearError::UnknownVariable(name.clone()))?;
            assignment.set(var, value.clone());
        }
        Ok(assignment)
    }

    pub fn get(&self, var: usize) -> Option<&BigRational> {
        self.values[var].as_ref()
    }
}

/// A multilinear polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultilinearPoly {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        MultilinearPoly {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<VarSpace>, c: BigRational) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::constant(), c);
        p
    }

    pub fn variable(space: &Arc<VarSpace>, v: usize) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::from_vars(vec![v]), BigRational::one());
        p
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c · mono`, dropping the entry if the total cancels to zero.
    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn assert_same_space(&self, other: &MultilinearPoly) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space) || self.space == other.space,
            "polynomials built over different variable spaces"
        );
    }

    pub fn add(&self, other: &MultilinearPoly) -> MultilinearPoly {
        self.assert_same_space(other);
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultilinearPoly) -> MultilinearPoly {
        self.assert_same_space(other);
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultilinearPoly {
        let mut out = Self::zero(&self.space);
        if c.is_zero() {
            return out;
        }
        for (mono, coeff) in &self.terms {
            out.terms.insert(mono.clone(), coeff * c);
        }
        out
    }

    /// Product of polynomials over disjoint variable sets. Panics if any
    /// monomial pair shares a variable (the product would not be squarefree);
    /// generators only ever multiply factors from different tree levels or
    /// different blocks, so disjointness is a structural guarantee.
    pub fn mul_disjoint(&self, other: &MultilinearPoly) -> MultilinearPoly {
        self.assert_same_space(other);
        let mut out = Self::zero(&self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.merge_disjoint(m2), c1 * c2);
            }
        }
        out
    }

    /// Exact evaluation; every occurring variable must be assigned.
    pub fn evaluate(&self, point: &Assignment) -> Result<BigRational, MultilinearError> {
        let mut total = BigRational::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for &v in mono.vars() {
                let value = point.get(v).ok_or_else(|| {
                    MultilinearError::UnassignedVariable(self.space.name(v).to_string())
                })?;
                term *= value;
            }
            total += term;
        }
        Ok(total)
    }

    /// Verifies the polynomial has at most one variable of each block per
    /// monomial, returning the offending monomial otherwise.
    pub fn check_block_linear(&self) -> Result<(), MultilinearError> {
        for mono in self.terms.keys() {
            let mut seen_blocks = Vec::new();
            for &v in mono.vars() {
                let b = self.space.block(v);
                if seen_blocks.contains(&b) {
                    return Err(MultilinearError::NotBlockLinear(self.render_monomial(mono), b));
                }
                seen_blocks.push(b);
            }
        }
        Ok(())
    }

    /// Substitutes, for every block, its distinguished variable `x₀` by
    /// `1 − Σ (other variables of the block)`. `distinguished[b]` names the
    /// variable for block `b`. Requires the polynomial to be linear over
    /// each block; the result is again squarefree, block-linear, and free of
    /// all distinguished variables.
    pub fn dehomogenize(&self, distinguished: &[usize]) -> Result<MultilinearPoly, MultilinearError> {
        if distinguished.len() != self.space.n_blocks() {
            return Err(MultilinearError::DistinguishedArity {
                want: self.space.n_blocks(),
                got: distinguished.len(),
            });
        }
        for (b, &v) in distinguished.iter().enumerate() {
            if self.space.block(v) != b {
                return Err(MultilinearError::DistinguishedBlockMismatch {
                    var: self.space.name(v).to_string(),
                    block: b,
                });
            }
        }
        self.check_block_linear()?;

        let mut out = Self::zero(&self.space);
        for (mono, c) in &self.terms {
            // split off the distinguished variables present in this monomial
            let subs: Vec<usize> = mono
                .vars()
                .iter()
                .copied()
                .filter(|&v| distinguished[self.space.block(v)] == v)
                .collect();
            let mut rest = mono.clone();
            for &v in &subs {
                rest = rest.without(v);
            }
            // expand ∏ (1 − Σ others) over the substituted blocks
            let mut partial: Vec<(Monomial, BigRational)> = vec![(rest, c.clone())];
            for &x0 in &subs {
                let block = self.space.block(x0);
                let mut next = Vec::new();
                for (m, coeff) in &partial {
                    next.push((m.clone(), coeff.clone()));
                    for y in self.space.block_members(block) {
                        if y != x0 {
                            next.push((
                                m.merge_disjoint(&Monomial::from_vars(vec![y])),
                                -coeff.clone(),
                            ));
                        }
                    }
                }
                partial = next;
            }
            for (m, coeff) in partial {
                out.add_term(m, coeff);
            }
        }
        Ok(out)
    }

    /// Rebuilds the polynomial in another space through a variable map;
    /// `map[v] = None` asserts `v` does not occur.
    pub fn map_variables(
        &self,
        target: &Arc<VarSpace>,
        map: &[Option<usize>],
    ) -> Result<MultilinearPoly, MultilinearError> {
        let mut out = Self::zero(target);
        for (mono, c) in &self.terms {
            let mut vars = Vec::with_capacity(mono.degree());
            for &v in mono.vars() {
                match map[v] {
                    Some(w) => vars.push(w),
                    None => {
                        return Err(MultilinearError::UnmappedVariable(
                            self.space.name(v).to_string(),
                        ))
                    }
                }
            }
            out.add_term(Monomial::from_vars(vars), c.clone());
        }
        Ok(out)
    }

    /// 0/1 exponent vectors of the monomials, in canonical monomial order.
    pub fn newton_support(&self) -> Vec<Vec<u8>> {
        self.terms
            .keys()
            .map(|mono| {
                let mut row = vec![0u8; self.space.len()];
                for &v in mono.vars() {
                    row[v] = 1;
                }
                row
            })
            .collect()
    }

    fn render_monomial(&self, mono: &Monomial) -> String {
        mono.vars()
            .iter()
            .map(|&v| self.space.name(v).to_string())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Canonical human-readable form: monomials in key order, the constant
    /// term last, explicit signs.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Monomial, &BigRational)> =
            self.terms.iter().filter(|(m, _)| m.degree() > 0).collect();
        if let Some(c) = self.terms.get(&Monomial::constant()) {
            ordered.push((&CONSTANT_KEY, c));
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in ordered.iter().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = coeff.abs();
            if mono.degree() == 0 {
                let _ = write!(out, "{}", format_rational(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&self.render_monomial(mono));
            } else {
                let _ = write!(out, "{}*{}", format_rational(&magnitude), self.render_monomial(mono));
            }
        }
        out
    }
}

static CONSTANT_KEY: Monomial = Monomial(Vec::new());

/// A square multilinear system: equation `k` is paired with variable `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    space: Arc<VarSpace>,
    equations: Vec<MultilinearPoly>,
}

impl PolySystem {
    pub fn new(
        space: Arc<VarSpace>,
        equations: Vec<MultilinearPoly>,
    ) -> Result<Self, MultilinearError> {
        if equations.len() != space.len() {
            return Err(MultilinearError::NotSquare {
                got: equations.len(),
                want: space.len(),
            });
        }
        for eq in &equations {
            assert!(
                *eq.space() == space,
                "equation built over a different variable space"
            );
        }
        Ok(PolySystem { space, equations })
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn equations(&self) -> &[MultilinearPoly] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Left-hand-side values at a point (a solution makes them all zero).
    pub fn residual(&self, point: &Assignment) -> Result<Vec<BigRational>, MultilinearError> {
        self.equations.iter().map(|eq| eq.evaluate(point)).collect()
    }

    /// True when every monomial has degree ≤ 1.
    pub fn is_linear(&self) -> bool {
        self.equations
            .iter()
            .all(|eq| eq.terms.keys().all(|m| m.degree() <= 1))
    }

    /// For a linear system, the pair `(A, b)` with `A·x = b` equivalent to
    /// "all equations vanish" (so `b` is minus the constant terms).
    pub fn linear_form(&self) -> Option<(RationalMatrix, Vec<BigRational>)> {
        if !self.is_linear() {
            return None;
        }
        let n = self.space.len();
        let mut a = RationalMatrix::zeros(self.equations.len(), n);
        let mut b = vec![BigRational::zero(); self.equations.len()];
        for (row, eq) in self.equations.iter().enumerate() {
            for (mono, c) in &eq.terms {
                match mono.vars() {
                    [] => b[row] = -c.clone(),
                    [v] => a.set(row, *v, c.clone()),
                    _ => unreachable!("is_linear checked"),
                }
            }
        }
        Some((a, b))
    }

    /// One `lhs = 0` line per equation, in order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for eq in &self.equations {
            out.push_str(&eq.render());
            out.push_str(" = 0\n");
        }
        out
    }

    /// Checks the structural conditions tying this system to a polynomial
    /// graph: matching shape (same variables and blocks), squarefree
    /// monomials, at most one variable per block per monomial, and variable
    /// `k` occurring in equation `j` only when the edge `j → k` exists.
    pub fn validate_sparsity(&self, graph: &PolynomialGraph) -> SparsityReport {
        let mut violations = Vec::new();
        if self.space.len() != graph.d() {
            violations.push(SparsityViolation::ShapeMismatch(format!(
                "{} variables vs {} graph vertices",
                self.space.len(),
                graph.d()
            )));
            return SparsityReport { violations };
        }
        for v in 0..self.space.len() {
            if self.space.block(v) != graph.block_of(v) {
                violations.push(SparsityViolation::ShapeMismatch(format!(
                    "variable `{}` sits in block {} but graph vertex {} in block {}",
                    self.space.name(v),
                    self.space.block(v),
                    v,
                    graph.block_of(v)
                )));
            }
        }
        for (j, eq) in self.equations.iter().enumerate() {
            for mono in eq.terms.keys() {
                for pair in mono.vars().windows(2) {
                    if pair[0] == pair[1] {
                        violations.push(SparsityViolation::RepeatedVariable {
                            equation: j,
                            monomial: eq.render_monomial(mono),
                        });
                    }
                }
                let mut blocks_seen: Vec<usize> = Vec::new();
                for &v in mono.vars() {
                    let b = self.space.block(v);
                    if blocks_seen.contains(&b) {
                        violations.push(SparsityViolation::SameBlockPair {
                            equation: j,
                            monomial: eq.render_monomial(mono),
                            block: b,
                        });
                    }
                    blocks_seen.push(b);
                    if !graph.has_edge(j, v) {
                        violations.push(SparsityViolation::EdgeMissing {
                            equation: j,
                            variable: self.space.name(v).to_string(),
                        });
                    }
                }
            }
        }
        SparsityReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SparsityViolation {
    ShapeMismatch(String),
    RepeatedVariable { equation: usize, monomial: String },
    SameBlockPair { equation: usize, monomial: String, block: usize },
    EdgeMissing { equation: usize, variable: String },
}

impl std::fmt::Display for SparsityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SparsityViolation::ShapeMismatch(detail) => write!(f, "shape mismatch: {detail}"),
            SparsityViolation::RepeatedVariable { equation, monomial } => {
                write!(f, "equation {equation}: monomial {monomial} repeats a variable")
            }
            SparsityViolation::SameBlockPair { equation, monomial, block } => write!(
                f,
                "equation {equation}: monomial {monomial} uses two variables of block {block}"
            ),
            SparsityViolation::EdgeMissing { equation, variable } => write!(
                f,
                "equation {equation} mentions `{variable}` but the graph has no such edge"
            ),
        }
    }
}

/// Outcome of [`PolySystem::validate_sparsity`]; clean when empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityReport {
    pub violations: Vec<SparsityViolation>,
}

impl SparsityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn space_two_blocks() -> Arc<VarSpace> {
        // block 0: {x0, x1}; block 1: {y0, y1, y2}
        VarSpace::new(vec![
            ("x0".into(), 0),
            ("x1".into(), 0),
            ("y0".into(), 1),
            ("y1".into(), 1),
            ("y2".into(), 1),
        ])
        .unwrap()
    }

    fn poly(space: &Arc<VarSpace>, terms: &[(&[usize], i64)]) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero(space);
        for (vars, c) in terms {
            p.add_term(Monomial::from_vars(vars.to_vec()), rat(*c, 1));
        }
        p
    }

    #[test]
    fn dehomogenize_replaces_the_distinguished_variable() {
        let space = space_two_blocks();
        // p = x0 over blocks {x0,x1}, {y0,y1,y2}
        let p = poly(&space, &[(&[0], 1)]);
        let deh = p.dehomogenize(&[0, 2]).unwrap();
        assert_eq!(deh, poly(&space, &[(&[], 1), (&[1], -1)]));
        assert_eq!(deh.render(), "-x1 + 1");
    }

    #[test]
    fn dehomogenize_three_variable_block() {
        let space = space_two_blocks();
        // c0*y0 + c1*y1 + c2*y2 → (c1−c0)y1 + (c2−c0)y2 + c0
        let p = poly(&space, &[(&[2], 5), (&[3], 7), (&[4], 11)]);
        let deh = p.dehomogenize(&[0, 2]).unwrap();
        assert_eq!(deh, poly(&space, &[(&[3], 2), (&[4], 6), (&[], 5)]));
    }

    #[test]
    fn dehomogenize_commutes_with_evaluation() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[0, 2], 3), (&[1, 4], -2), (&[0], 1), (&[], 4)]);
        let deh = p.dehomogenize(&[0, 2]).unwrap();

        // reduced point: x1 = 1/3, y1 = 1/5, y2 = 1/7
        let mut reduced = Assignment::empty(&space);
        reduced.set(1, rat(1, 3));
        reduced.set(3, rat(1, 5));
        reduced.set(4, rat(1, 7));
        // full point adds x0 = 1 − x1, y0 = 1 − y1 − y2
        let mut full = reduced.clone();
        full.set(0, rat(2, 3));
        full.set(2, rat(23, 35));

        assert_eq!(p.evaluate(&full).unwrap(), deh.evaluate(&reduced).unwrap());
        // no distinguished variable survives
        for (mono, _) in deh.terms() {
            assert!(!mono.contains(0) && !mono.contains(2));
        }
    }

    #[test]
    fn dehomogenize_requires_block_linearity() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[2, 3], 1)]);
        assert_eq!(
            p.dehomogenize(&[0, 2]),
            Err(MultilinearError::NotBlockLinear("y0*y1".into(), 1))
        );
    }

    #[test]
    fn render_orders_terms_and_elides_unit_coefficients() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[], -2), (&[3], 6)]);
        assert_eq!(p.render(), "6*y1 - 2");
        let p = poly(&space, &[(&[1], -1), (&[], 1)]);
        assert_eq!(p.render(), "-x1 + 1");
        assert_eq!(MultilinearPoly::zero(&space).render(), "0");
        let half = MultilinearPoly::constant(&space, rat(1, 2));
        assert_eq!(half.render(), "1/2");
    }

    #[test]
    fn terms_cancel_exactly() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[1], 2)]);
        let q = poly(&space, &[(&[1], -2)]);
        assert!(p.add(&q).is_zero());
    }

    #[test]
    fn mul_disjoint_panics_on_shared_variables() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[1], 1)]);
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| p.mul_disjoint(&p)));
        assert!(result.is_err());
    }

    #[test]
    fn newton_support_lists_exponent_vectors() {
        let space = space_two_blocks();
        let p = poly(&space, &[(&[0, 3], 2), (&[], 1)]);
        assert_eq!(
            p.newton_support(),
            vec![vec![0, 0, 0, 0, 0], vec![1, 0, 0, 1, 0]]
        );
    }

    #[test]
    fn linear_form_extraction() {
        // one block, one variable: −5x + 1 = 0 has solution 1/5
        let space = VarSpace::new(vec![("x".into(), 0)]).unwrap();
        let eq = poly(&space, &[(&[0], -5), (&[], 1)]);
        let system = PolySystem::new(Arc::clone(&space), vec![eq]).unwrap();
        assert!(system.is_linear());
        let (a, b) = system.linear_form().unwrap();
        assert_eq!(a.at(0, 0), &rat(-5, 1));
        assert_eq!(b, vec![rat(-1, 1)]);
        match crate::numerics::solve_linear_exact(&a, &b) {
            crate::numerics::LinearSolution::Unique(x) => assert_eq!(x, vec![rat(1, 5)]),
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn sparsity_validation_flags_missing_edges_and_block_pairs() {
        // graph: two singleton blocks, only edge v1 → v2
        let graph =
            PolynomialGraph::validate(&[vec![0], vec![1]], &[(0, 1)], None).unwrap();
        let space = VarSpace::new(vec![("a".into(), 0), ("b".into(), 1)]).unwrap();
        let ok = PolySystem::new(
            Arc::clone(&space),
            vec![poly(&space, &[(&[1], 3)]), poly(&space, &[(&[], 2)])],
        )
        .unwrap();
        assert!(ok.validate_sparsity(&graph).is_clean());

        // equation 1 mentions `a` but the graph has no edge v2 → v1
        let bad = PolySystem::new(
            Arc::clone(&space),
            vec![poly(&space, &[(&[1], 3)]), poly(&space, &[(&[0], 2)])],
        )
        .unwrap();
        let report = bad.validate_sparsity(&graph);
        assert_eq!(
            report.violations,
            vec![SparsityViolation::EdgeMissing {
                equation: 1,
                variable: "a".into()
            }]
        );
    }

    #[test]
    fn systems_must_be_square() {
        let space = space_two_blocks();
        assert_eq!(
            PolySystem::new(Arc::clone(&space), vec![MultilinearPoly::zero(&space)])
                .err()
                .unwrap(),
            MultilinearError::NotSquare { got: 1, want: 5 }
        );
    }
}
