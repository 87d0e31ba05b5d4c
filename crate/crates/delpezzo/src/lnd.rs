//! Derivation calculus: locally nilpotent derivations of polynomial rings,
//! ideal preservation, gradings, slices, and denominator clearing.
//!
//! A derivation is stored by its variable images and extended by the
//! Leibniz rule. Nilpotency is certified, never refuted: iterating the
//! derivation must reach zero within a configurable bound, and running out
//! of budget is a typed error rather than a "no".

use crate::groebner::IdealPresentation;
use crate::poly::Poly;
use std::collections::BTreeMap;
use std::fmt;

/// Errors from derivation operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LndError {
    /// Image list length differs from the variable count.
    ArityMismatch { expected: usize, got: usize },
    /// Iterated application failed to reach zero within the bound.
    NilpotencyBoundExceeded { bound: u32 },
    /// The scaling multiplier must be killed by the derivation.
    MultiplierNotInKernel,
    /// The scaling multiplier must be nonzero.
    ZeroMultiplier,
    /// A localized image could not be cleared to a polynomial.
    DenominatorNotCleared { variable: usize },
    /// The localization denominator must be nonzero.
    ZeroDenominator,
}

impl fmt::Display for LndError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LndError::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} variable images, got {got}")
            }
            LndError::NilpotencyBoundExceeded { bound } => {
                write!(f, "iterate did not vanish within {bound} applications")
            }
            LndError::MultiplierNotInKernel => {
                write!(f, "multiplier is not in the kernel of the derivation")
            }
            LndError::ZeroMultiplier => write!(f, "multiplier is zero"),
            LndError::DenominatorNotCleared { variable } => {
                write!(f, "image of variable {variable} stays fractional after clearing")
            }
            LndError::ZeroDenominator => write!(f, "localization denominator is zero"),
        }
    }
}

impl std::error::Error for LndError {}

/// A derivation of the polynomial ring, given by its variable images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    nvars: usize,
    images: Vec<Poly>,
}

impl Derivation {
    pub fn new(nvars: usize, images: Vec<Poly>) -> Result<Derivation, LndError> {
        if images.len() != nvars {
            return Err(LndError::ArityMismatch {
                expected: nvars,
                got: images.len(),
            });
        }
        for img in &images {
            if img.nvars() != nvars {
                return Err(LndError::ArityMismatch {
                    expected: nvars,
                    got: img.nvars(),
                });
            }
        }
        Ok(Derivation { nvars, images })
    }

    pub fn zero(nvars: usize) -> Derivation {
        Derivation {
            nvars,
            images: vec![Poly::zero(nvars); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image_of_var(&self, index: usize) -> &Poly {
        &self.images[index]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.is_zero())
    }

    /// Apply via the Leibniz rule: d(p) = Σ d(xi)·∂p/∂xi.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (i, image) in self.images.iter().enumerate() {
            if image.is_zero() {
                continue;
            }
            let partial = p.partial_derivative(i);
            if !partial.is_zero() {
                out = out.add(&image.mul(&partial));
            }
        }
        out
    }

    /// The commutator [self, other], again a derivation; its images are
    /// self(other(xi)) - other(self(xi)).
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let images = (0..self.nvars)
            .map(|i| {
                self.apply(other.image_of_var(i))
                    .sub(&other.apply(self.image_of_var(i)))
            })
            .collect();
        Derivation {
            nvars: self.nvars,
            images,
        }
    }

    /// Smallest k ≥ 0 with d^k(p) = 0, certified within `bound`
    /// applications; running past the bound is a typed error.
    pub fn nilpotency_order(&self, p: &Poly, bound: u32) -> Result<u32, LndError> {
        let mut current = p.clone();
        let mut k = 0u32;
        while !current.is_zero() {
            if k >= bound {
                return Err(LndError::NilpotencyBoundExceeded { bound });
            }
            current = self.apply(&current);
            k += 1;
        }
        Ok(k)
    }

    /// Per-variable nilpotency orders; certifies local nilpotency on the
    /// coordinate generators.
    pub fn variable_orders(&self, bound: u32) -> Result<Vec<u32>, LndError> {
        (0..self.nvars)
            .map(|i| self.nilpotency_order(&Poly::var(self.nvars, i), bound))
            .collect()
    }

    /// True when d maps every ideal generator back into the ideal,
    /// i.e. the normal form of d(g) vanishes for each generator g.
    pub fn preserves_ideal(&self, ideal: &IdealPresentation) -> bool {
        ideal
            .generators()
            .iter()
            .all(|g| ideal.contains(&self.apply(g)))
    }

    /// Decompose into weighted-homogeneous parts, keyed by the degree
    /// shift: the part at shift s maps a weight-w variable to a
    /// polynomial of weighted degree w + s. Shifts may be negative.
    pub fn weighted_parts(&self, weights: &[i64]) -> BTreeMap<i64, Derivation> {
        assert_eq!(weights.len(), self.nvars, "weight vector length mismatch");
        let mut shifts: BTreeMap<i64, Vec<Poly>> = BTreeMap::new();
        for (i, image) in self.images.iter().enumerate() {
            for (shift_base, part) in image.weighted_parts(weights) {
                let shift = shift_base - weights[i];
                shifts
                    .entry(shift)
                    .or_insert_with(|| vec![Poly::zero(self.nvars); self.nvars])[i] = part;
            }
        }
        shifts
            .into_iter()
            .map(|(s, images)| {
                (
                    s,
                    Derivation {
                        nvars: self.nvars,
                        images,
                    },
                )
            })
            .collect()
    }

    /// The top graded part (highest shift), re-certified locally
    /// nilpotent on the variables within `bound`. Errors if either the
    /// derivation itself or its top part fails certification. The zero
    /// derivation is its own principal part at shift 0.
    pub fn principal_part(&self, weights: &[i64], bound: u32) -> Result<(i64, Derivation), LndError> {
        self.variable_orders(bound)?;
        if self.is_zero() {
            return Ok((0, self.clone()));
        }
        let parts = self.weighted_parts(weights);
        let (&shift, top) = parts
            .iter()
            .next_back()
            .expect("nonzero derivation has at least one graded part");
        top.variable_orders(bound)?;
        Ok((shift, top.clone()))
    }

    /// Scan candidate polynomials for a slice pair: the first g with
    /// d(g) ≠ 0 and d(d(g)) = 0 gives (g, d(g)).
    pub fn find_slice_pair(&self, candidates: &[Poly]) -> Option<(Poly, Poly)> {
        for g in candidates {
            let dg = self.apply(g);
            if dg.is_zero() {
                continue;
            }
            if self.apply(&dg).is_zero() {
                return Some((g.clone(), dg));
            }
        }
        None
    }

    /// Scale by a kernel element: p·d for d(p) = 0, p ≠ 0. Reports the
    /// per-variable nilpotency orders of both derivations; they agree
    /// because (p·d)^k(xi) = p^k·d^k(xi) when p is in the kernel.
    pub fn kernel_scaled(&self, p: &Poly, bound: u32) -> Result<KernelScaleReport, LndError> {
        if p.is_zero() {
            return Err(LndError::ZeroMultiplier);
        }
        if !self.apply(p).is_zero() {
            return Err(LndError::MultiplierNotInKernel);
        }
        let scaled = Derivation {
            nvars: self.nvars,
            images: self.images.iter().map(|img| img.mul(p)).collect(),
        };
        let base_orders = self.variable_orders(bound)?;
        let scaled_orders = scaled.variable_orders(bound)?;
        let orders_match = base_orders == scaled_orders;
        Ok(KernelScaleReport {
            scaled,
            base_orders,
            scaled_orders,
            orders_match,
        })
    }
}

/// Result of scaling a derivation by a kernel element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelScaleReport {
    pub scaled: Derivation,
    pub base_orders: Vec<u32>,
    pub scaled_orders: Vec<u32>,
    pub orders_match: bool,
}

/// A derivation with images num_i / f^{k_i}, localized at a single
/// denominator f.
#[derive(Debug, Clone)]
pub struct LocalizedDerivation {
    nvars: usize,
    denominator: Poly,
    /// (numerator, denominator exponent) per variable.
    images: Vec<(Poly, u32)>,
}

impl LocalizedDerivation {
    pub fn new(
        nvars: usize,
        denominator: Poly,
        images: Vec<(Poly, u32)>,
    ) -> Result<LocalizedDerivation, LndError> {
        if denominator.is_zero() {
            return Err(LndError::ZeroDenominator);
        }
        if images.len() != nvars {
            return Err(LndError::ArityMismatch {
                expected: nvars,
                got: images.len(),
            });
        }
        Ok(LocalizedDerivation {
            nvars,
            denominator,
            images,
        })
    }

    /// Apply to a polynomial, returning (numerator, exponent) with the
    /// value equal to numerator / f^exponent.
    fn apply_fraction(&self, p: &Poly) -> (Poly, u32) {
        let kmax = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, (num, _))| !num.is_zero() && !p.partial_derivative(*i).is_zero())
            .map(|(_, (_, k))| *k)
            .max()
            .unwrap_or(0);
        let mut acc = Poly::zero(self.nvars);
        for (i, (num, k)) in self.images.iter().enumerate() {
            if num.is_zero() {
                continue;
            }
            let partial = p.partial_derivative(i);
            if partial.is_zero() {
                continue;
            }
            let pad = self.denominator.pow(kmax - k);
            acc = acc.add(&num.mul(&partial).mul(&pad));
        }
        (acc, kmax)
    }

    /// Minimal N such that f^N·d maps every supplied generator to a
    /// polynomial, together with the cleared polynomial derivation f^N·d.
    ///
    /// Errors when some variable image of f^N·d is itself not polynomial
    /// (possible when the generators do not exercise every variable).
    pub fn clear_denominators(&self, generators: &[Poly]) -> Result<(u32, Derivation), LndError> {
        let mut needed = 0u32;
        for g in generators {
            let (num, k) = self.apply_fraction(g);
            if num.is_zero() {
                continue;
            }
            // Strip as many factors of f as divide the numerator exactly.
            let mut surplus = 0u32;
            let mut current = num;
            while surplus < k {
                match divide_exact(&current, &self.denominator) {
                    Some(q) => {
                        current = q;
                        surplus += 1;
                    }
                    None => break,
                }
            }
            needed = needed.max(k - surplus);
        }

        let mut images = Vec::with_capacity(self.nvars);
        for (i, (num, k)) in self.images.iter().enumerate() {
            if num.is_zero() {
                images.push(Poly::zero(self.nvars));
                continue;
            }
            if needed >= *k {
                images.push(num.mul(&self.denominator.pow(needed - k)));
            } else {
                // f^needed / f^k leaves a genuine denominator unless the
                // numerator absorbs it.
                let mut current = num.clone();
                for _ in 0..(k - needed) {
                    current = divide_exact(&current, &self.denominator)
                        .ok_or(LndError::DenominatorNotCleared { variable: i })?;
                }
                images.push(current);
            }
        }
        Ok((
            needed,
            Derivation {
                nvars: self.nvars,
                images,
            },
        ))
    }
}

/// Exact polynomial division: Some(q) iff p = q·f. A single divisor is a
/// basis of the principal ideal it generates, so the division algorithm's
/// remainder decides divisibility exactly.
pub fn divide_exact(p: &Poly, f: &Poly) -> Option<Poly> {
    use crate::groebner::{leading_monomial, normal_form, MonomialOrder};
    assert!(!f.is_zero(), "division by the zero polynomial");
    if p.is_zero() {
        return Some(Poly::zero(p.nvars()));
    }
    let order = MonomialOrder::DegRevLex;
    let basis = [f.clone()];
    if !normal_form(p, &basis, order).is_zero() {
        return None;
    }
    // Re-run the division collecting the quotient.
    let nvars = p.nvars();
    let mut quotient = Poly::zero(nvars);
    let mut work = p.clone();
    let flm = leading_monomial(f, order).to_vec();
    let flc = f.coeff(&flm);
    while !work.is_zero() {
        let lm = leading_monomial(&work, order).to_vec();
        let divisible = flm.iter().zip(&lm).all(|(a, b)| a <= b);
        debug_assert!(divisible, "zero normal form but stuck division");
        if !divisible {
            return None;
        }
        let shift: Vec<u32> = lm.iter().zip(&flm).map(|(a, b)| a - b).collect();
        let factor = work.coeff(&lm) / &flc;
        let piece = Poly::monomial(nvars, shift, factor);
        work = work.sub(&piece.mul(f));
        quotient = quotient.add(&piece);
    }
    Some(quotient)
}
