//! Buchberger's algorithm with the product and chain criteria, plus
//! multivariate normal forms.
//!
//! The default monomial order is degree reverse lexicographic; plain
//! lexicographic order is available for elimination-style computations.
//! The pair loop carries a configurable budget on S-polynomial reductions
//! and aborts with a typed error when it is exhausted, so callers can
//! bound worst-case behavior. Returned bases are reduced: interreduced,
//! monic, and sorted by leading monomial.

use crate::poly::Poly;
use crate::rational::Rat;
use num::One;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Default cap on S-polynomial reductions.
pub const DEFAULT_PAIR_BUDGET: usize = 10_000;

/// Monomial orders supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic (the default).
    DegRevLex,
    /// Pure lexicographic, first variable strongest.
    Lex,
}

impl MonomialOrder {
    /// Compare two exponent vectors under the order.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&x| x as u64).sum();
                let db: u64 = b.iter().map(|&x| x as u64).sum();
                da.cmp(&db).then_with(|| {
                    // Ties: the last nonzero coordinate of a - b decides,
                    // negative meaning a is the larger monomial.
                    for i in (0..a.len()).rev() {
                        match a[i].cmp(&b[i]) {
                            Ordering::Equal => continue,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Errors from basis computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    /// The S-pair budget ran out before the basis stabilized.
    BudgetExceeded { budget: usize },
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::BudgetExceeded { budget } => {
                write!(f, "S-pair budget of {budget} reductions exceeded")
            }
        }
    }
}

impl std::error::Error for GroebnerError {}

/// Leading exponent vector of a nonzero polynomial under the order.
pub fn leading_monomial<'a>(p: &'a Poly, order: MonomialOrder) -> &'a [u32] {
    debug_assert!(!p.is_zero(), "leading monomial of zero");
    p.terms()
        .map(|(e, _)| e)
        .max_by(|a, b| order.cmp(a, b))
        .expect("nonzero polynomial")
        .as_slice()
}

fn leading_coefficient(p: &Poly, order: MonomialOrder) -> Rat {
    let lm = leading_monomial(p, order).to_vec();
    p.coeff(&lm)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn monomial_quotient(num: &[u32], den: &[u32]) -> Vec<u32> {
    num.iter().zip(den).map(|(x, y)| x - y).collect()
}

/// Fully reduce `p` modulo `basis`: no term of the result is divisible by
/// any basis leading monomial.
pub fn normal_form(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let nvars = p.nvars();
    let mut remainder = Poly::zero(nvars);
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let lm = leading_monomial(&work, order).to_vec();
        let lc = work.coeff(&lm);
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let glm = leading_monomial(g, order);
            if divides(glm, &lm) {
                let factor = &lc / leading_coefficient(g, order);
                let shift = monomial_quotient(&lm, glm);
                let scaled = g.mul(&Poly::monomial(nvars, shift, factor));
                work = work.sub(&scaled);
                continue 'outer;
            }
        }
        // Irreducible leading term: move it to the remainder.
        let term = Poly::monomial(nvars, lm, lc);
        remainder = remainder.add(&term);
        work = work.sub(&term);
    }
    remainder
}

fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let nvars = f.nvars();
    let lf = leading_monomial(f, order).to_vec();
    let lg = leading_monomial(g, order).to_vec();
    let l = lcm(&lf, &lg);
    let cf = leading_coefficient(f, order);
    let cg = leading_coefficient(g, order);
    let mf = Poly::monomial(nvars, monomial_quotient(&l, &lf), Rat::one() / cf);
    let mg = Poly::monomial(nvars, monomial_quotient(&l, &lg), Rat::one() / cg);
    f.mul(&mf).sub(&g.mul(&mg))
}

fn make_monic(p: &Poly, order: MonomialOrder) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let lc = leading_coefficient(p, order);
    p.scale(&(Rat::one() / lc))
}

/// Compute a reduced Gröbner basis of the ideal generated by `gens`.
///
/// `budget` bounds the number of S-polynomial reductions; exceeding it
/// yields [`GroebnerError::BudgetExceeded`]. Pairs dismissed by the
/// product or chain criterion cost nothing.
pub fn groebner_basis(
    gens: &[Poly],
    order: MonomialOrder,
    budget: usize,
) -> Result<Vec<Poly>, GroebnerError> {
    let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }

    let mut reductions = 0usize;
    while let Some(&(i, j)) = pending.iter().next() {
        pending.remove(&(i, j));
        let li = leading_monomial(&basis[i], order).to_vec();
        let lj = leading_monomial(&basis[j], order).to_vec();

        // Product criterion: coprime leading monomials reduce to zero.
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // Chain criterion: some k with lm(k) | lcm(i,j) whose pairs with
        // both i and j are already settled.
        let lij = lcm(&li, &lj);
        let chained = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let pair_ik = (i.min(k), i.max(k));
            let pair_jk = (j.min(k), j.max(k));
            divides(leading_monomial(&basis[k], order), &lij)
                && !pending.contains(&pair_ik)
                && !pending.contains(&pair_jk)
        });
        if chained {
            continue;
        }

        if reductions >= budget {
            return Err(GroebnerError::BudgetExceeded { budget });
        }
        reductions += 1;

        let s = s_polynomial(&basis[i], &basis[j], order);
        let reduced = normal_form(&s, &basis, order);
        if reduced.is_zero() {
            continue;
        }
        let new_index = basis.len();
        basis.push(reduced);
        for k in 0..new_index {
            pending.insert((k, new_index));
        }
    }

    // Interreduce to the unique reduced basis: drop members whose leading
    // monomial another member divides, then fully reduce each against the
    // rest and normalize.
    let mut reduced: Vec<Poly> = Vec::new();
    for i in 0..basis.len() {
        let lm_i = leading_monomial(&basis[i], order);
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            j != i
                && !g.is_zero()
                && divides(leading_monomial(g, order), lm_i)
                && (leading_monomial(g, order) != lm_i || j < i)
        });
        if !redundant {
            reduced.push(basis[i].clone());
        }
    }
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..reduced.len() {
        let others: Vec<Poly> = reduced
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = normal_form(&reduced[i], &others, order);
        if !nf.is_zero() {
            out.push(make_monic(&nf, order));
        }
    }
    out.sort_by(|a, b| order.cmp(leading_monomial(a, order), leading_monomial(b, order)));
    out.dedup();
    Ok(out)
}

/// An ideal presented by generators with a cached reduced basis.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    generators: Vec<Poly>,
    order: MonomialOrder,
    basis: Vec<Poly>,
}

impl IdealPresentation {
    pub fn new(
        generators: Vec<Poly>,
        order: MonomialOrder,
        budget: usize,
    ) -> Result<IdealPresentation, GroebnerError> {
        let basis = groebner_basis(&generators, order, budget)?;
        Ok(IdealPresentation {
            generators,
            order,
            basis,
        })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, &self.basis, self.order)
    }

    /// Ideal membership via vanishing normal form.
    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }
}
