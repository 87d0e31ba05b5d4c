//! Intersection theory on the lattice Z^{1,n}.
//!
//! Classes live in the basis (L, E1, …, En) with the diagonal form
//! (+1, -1, …, -1); the canonical class is K = -3L + E1 + … + En. A class
//! is stored as its coefficient vector `[a, c1, …, cn]`, meaning
//! `a·L + c1·E1 + … + cn·En`, so for an exceptional curve class the Ei
//! coefficient is +1 and for a plane-curve transform it is negative.
//!
//! Rank bookkeeping: `n` is the number of exceptional classes, so vectors
//! have length n + 1. The curve-cone operations (`is_nef`, `is_ample`,
//! `inverse_nef_value`, `adjoint_class`) require n ≤ 8, where the cone is
//! finitely generated; the bare lattice operations work for any n.

use crate::matrix::QMatrix;
use crate::rational::{format_rat, Rat};
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Errors from lattice operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicardError {
    /// A class vector has the wrong length for the lattice.
    DimensionMismatch { expected: usize, got: usize },
    /// The operation needs integer coefficients.
    NonIntegralClass,
    /// The curve-cone operations only exist for n ≤ 8.
    UnsupportedRank { n: usize },
    /// The class must be nef for this operation.
    NotNef,
    /// The adjoint class has negative self-intersection.
    AdjointNegativeSquare { square: Rat },
    /// The reflection vector is not a root (r² = -2, r·K = 0).
    NotARoot,
    /// Boundary-coefficient solving needs as many test classes as unknowns.
    ShapeMismatch { unknowns: usize, tests: usize },
    /// The linear system for the boundary coefficients is singular.
    SingularSystem,
    /// The exceptional locus must have negative definite Gram matrix.
    NotNegativeDefinite,
    /// Push-forward needs at least one exceptional coordinate to drop.
    NothingToContract,
}

impl fmt::Display for PicardError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicardError::DimensionMismatch { expected, got } => {
                write!(f, "class has {got} coefficients, lattice expects {expected}")
            }
            PicardError::NonIntegralClass => write!(f, "class is not integral"),
            PicardError::UnsupportedRank { n } => {
                write!(f, "curve-cone operations require n <= 8, got n = {n}")
            }
            PicardError::NotNef => write!(f, "class is not nef"),
            PicardError::AdjointNegativeSquare { square } => {
                write!(f, "adjoint class has negative square {}", format_rat(square))
            }
            PicardError::NotARoot => write!(f, "reflection vector is not a root"),
            PicardError::ShapeMismatch { unknowns, tests } => {
                write!(f, "{unknowns} unknown classes but {tests} test classes")
            }
            PicardError::SingularSystem => write!(f, "boundary system is singular"),
            PicardError::NotNegativeDefinite => {
                write!(f, "exceptional Gram matrix is not negative definite")
            }
            PicardError::NothingToContract => {
                write!(f, "push-forward needs at least one exceptional class")
            }
        }
    }
}

impl std::error::Error for PicardError {}

/// A class in Z^{1,n}, stored as coefficients over (L, E1, …, En).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeClass(Vec<Rat>);

impl LatticeClass {
    pub fn new(coeffs: Vec<Rat>) -> LatticeClass {
        assert!(!coeffs.is_empty(), "class needs at least the L coefficient");
        LatticeClass(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> LatticeClass {
        LatticeClass::new(coeffs.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero(n: usize) -> LatticeClass {
        LatticeClass(vec![Rat::zero(); n + 1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    /// Number of exceptional coordinates (vector length minus one).
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.denom().is_one())
    }

    /// Coefficient of L, which equals the intersection with L.
    pub fn degree(&self) -> Rat {
        self.0[0].clone()
    }

    pub fn add(&self, other: &LatticeClass) -> LatticeClass {
        assert_eq!(self.0.len(), other.0.len(), "class dimension mismatch");
        LatticeClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeClass) -> LatticeClass {
        assert_eq!(self.0.len(), other.0.len(), "class dimension mismatch");
        LatticeClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeClass {
        LatticeClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: &Rat) -> LatticeClass {
        LatticeClass(self.0.iter().map(|a| a * k).collect())
    }
}

// Render "3L - E1 - 2E2" style; pure cosmetics for reports and errors.
impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, coeff) in self.0.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            if !mag.is_one() {
                write!(f, "{}", format_rat(&mag))?;
            }
            if i == 0 {
                write!(f, "L")?;
            } else {
                write!(f, "E{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The lattice Z^{1,n} with its intersection form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
}

/// Outcome of the adjoint classification of a nef class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointClass {
    /// The inverse nef value t0.
    pub nef_value: Rat,
    /// The adjoint class M = h + t0·K.
    pub class: LatticeClass,
    pub kind: AdjointKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointKind {
    /// M = 0.
    Zero,
    /// M ≠ 0 with M² = 0: a free fiber class.
    Fiber,
    /// M² > 0.
    Big,
}

/// Input for crepant-pullback coefficient solving: the ambient lattice
/// size, the exceptional classes of the resolution, and the strict
/// transform of the boundary.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    pub n: usize,
    pub exceptional: Vec<LatticeClass>,
    pub strict: LatticeClass,
    /// Total pullback of the boundary, when the caller knows it; carried
    /// for reporting, not used by the solver.
    pub pullback_class: Option<LatticeClass>,
}

/// Result of crepant-pullback solving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrepantCoefficients {
    /// Coefficient of each exceptional class in the crepant boundary.
    pub coefficients: Vec<Rat>,
    /// Discrepancies: the negatives of the coefficients.
    pub discrepancies: Vec<Rat>,
}

impl Lattice {
    pub fn new(n: usize) -> Lattice {
        Lattice { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    fn check(&self, c: &LatticeClass) -> Result<(), PicardError> {
        if c.0.len() != self.dim() {
            return Err(PicardError::DimensionMismatch {
                expected: self.dim(),
                got: c.0.len(),
            });
        }
        Ok(())
    }

    /// The intersection form: x·y = x0·y0 - Σ xi·yi.
    pub fn intersect(&self, x: &LatticeClass, y: &LatticeClass) -> Result<Rat, PicardError> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = &x.0[0] * &y.0[0];
        for i in 1..self.dim() {
            acc -= &x.0[i] * &y.0[i];
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, x: &LatticeClass) -> Result<Rat, PicardError> {
        self.intersect(x, x)
    }

    /// K = -3L + E1 + … + En.
    pub fn canonical_class(&self) -> LatticeClass {
        let mut v = vec![Rat::from_integer(BigInt::from(-3))];
        v.extend(std::iter::repeat_with(Rat::one).take(self.n));
        LatticeClass(v)
    }

    pub fn minus_canonical(&self) -> LatticeClass {
        self.canonical_class().neg()
    }

    /// K² = 9 - n, the degree of the corresponding del Pezzo surface.
    pub fn canonical_square(&self) -> i64 {
        9 - self.n as i64
    }

    /// Arithmetic genus from adjunction: g = 1 + (c² + c·K)/2.
    /// Requires an integral class.
    pub fn adjunction_genus(&self, c: &LatticeClass) -> Result<Rat, PicardError> {
        self.check(c)?;
        if !c.is_integral() {
            return Err(PicardError::NonIntegralClass);
        }
        let c2 = self.self_intersection(c)?;
        let ck = self.intersect(c, &self.canonical_class())?;
        Ok(Rat::one() + (c2 + ck) / Rat::from_integer(BigInt::from(2)))
    }

    /// Integer classes c with c·K = `c_dot_k` and c² = `c_squared`,
    /// canonically ordered by coefficient vector.
    ///
    /// In coordinates c = aL - Σ bi·Ei the constraints read
    /// Σ bi = 3a + c·K and Σ bi² = a² - c². The a-range follows from
    /// Cauchy–Schwarz, (Σ bi)² ≤ n·Σ bi²; every candidate a is checked
    /// against that exact inequality, so the box is provably complete.
    pub fn classes_with_invariants(
        &self,
        c_dot_k: i64,
        c_squared: i64,
        require_nonneg_degree: bool,
    ) -> Result<Vec<LatticeClass>, PicardError> {
        if self.n > 8 {
            return Err(PicardError::UnsupportedRank { n: self.n });
        }
        let n = self.n as i64;
        let k = c_dot_k;
        let s = c_squared;
        let mut found: Vec<Vec<i64>> = Vec::new();

        if n == 0 {
            // No exceptional coordinates: need 3a + k = 0 and a² = s.
            if k % 3 == 0 {
                let a = -k / 3;
                if a * a == s && (!require_nonneg_degree || a >= 0) {
                    found.push(vec![a]);
                }
            }
        } else {
            // Exact feasibility: (3a + k)² ≤ n(a² - s), i.e.
            // (9 - n)a² + 6ka + (k² + ns) ≤ 0.
            let feasible = |a: i64| (9 - n) * a * a + 6 * k * a + (k * k + n * s) <= 0;
            // Float estimate of the root window, then exact filtering with
            // a safety margin of 2 on either side.
            let qa = (9 - n) as f64;
            let qb = (6 * k) as f64;
            let qc = (k * k + n * s) as f64;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                let lo = ((-qb - disc.sqrt()) / (2.0 * qa)).floor() as i64 - 2;
                let hi = ((-qb + disc.sqrt()) / (2.0 * qa)).ceil() as i64 + 2;
                for a in lo..=hi {
                    if !feasible(a) {
                        continue;
                    }
                    if require_nonneg_degree && a < 0 {
                        continue;
                    }
                    let sum = 3 * a + k;
                    let square = a * a - s;
                    if square < 0 {
                        continue;
                    }
                    let mut b = vec![0i64; self.n];
                    enumerate_b(&mut b, 0, sum, square, &mut |bs| {
                        let mut v = Vec::with_capacity(self.n + 1);
                        v.push(a);
                        v.extend(bs.iter().map(|&bi| -bi));
                        found.push(v);
                    });
                }
            }
        }

        found.sort();
        Ok(found
            .into_iter()
            .map(|v| LatticeClass(v.into_iter().map(|x| Rat::from_integer(BigInt::from(x))).collect()))
            .collect())
    }

    /// The (-1)-classes: c² = -1, c·K = -1.
    pub fn minus_one_classes(&self) -> Result<Vec<LatticeClass>, PicardError> {
        self.classes_with_invariants(-1, -1, false)
    }

    /// The conic fiber classes: c² = 0, c·K = -2, c·L ≥ 0.
    pub fn conic_classes(&self) -> Result<Vec<LatticeClass>, PicardError> {
        self.classes_with_invariants(-2, 0, true)
    }

    /// The roots: c² = -2, c·K = 0 (both signs are included).
    pub fn roots(&self) -> Result<Vec<LatticeClass>, PicardError> {
        self.classes_with_invariants(0, -2, false)
    }

    pub fn is_root(&self, r: &LatticeClass) -> Result<bool, PicardError> {
        self.check(r)?;
        if !r.is_integral() {
            return Ok(false);
        }
        let two = Rat::from_integer(BigInt::from(-2));
        Ok(self.self_intersection(r)? == two
            && self.intersect(r, &self.canonical_class())?.is_zero())
    }

    /// Membership test matching the (-1)-class enumeration: integral,
    /// self-intersection -1, and pairing -1 with the canonical class.
    pub fn is_minus_one_class(&self, c: &LatticeClass) -> Result<bool, PicardError> {
        self.check(c)?;
        if !c.is_integral() {
            return Ok(false);
        }
        let minus_one = Rat::from_integer(BigInt::from(-1));
        Ok(self.self_intersection(c)? == minus_one
            && self.intersect(c, &self.canonical_class())? == minus_one)
    }

    /// Reflection in a root: x ↦ x + (x·r)·r. Errors when r is not a root.
    pub fn reflect(&self, root: &LatticeClass, x: &LatticeClass) -> Result<LatticeClass, PicardError> {
        if !self.is_root(root)? {
            return Err(PicardError::NotARoot);
        }
        let pairing = self.intersect(x, root)?;
        Ok(x.add(&root.scaled(&pairing)))
    }

    /// Generators of the curve cone (n ≤ 8).
    ///
    /// For n ≥ 2 these are the (-1)-classes. For n = 1 the cone is spanned
    /// by E1 together with the fiber class L - E1 (the only (-1)-class is
    /// E1, which alone spans a half-line, not the cone); for n = 0 by L.
    pub fn curve_cone_generators(&self) -> Result<Vec<LatticeClass>, PicardError> {
        match self.n {
            0 => Ok(vec![LatticeClass::from_ints(&[1])]),
            1 => Ok(vec![
                LatticeClass::from_ints(&[0, 1]),
                LatticeClass::from_ints(&[1, -1]),
            ]),
            2..=8 => self.minus_one_classes(),
            _ => Err(PicardError::UnsupportedRank { n: self.n }),
        }
    }

    /// Nef test: h·c ≥ 0 against every curve-cone generator.
    pub fn is_nef(&self, h: &LatticeClass) -> Result<bool, PicardError> {
        self.check(h)?;
        for c in self.curve_cone_generators()? {
            if self.intersect(h, &c)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ample test (Nakai–Moishezon on a surface with finitely generated
    /// curve cone): h² > 0 and h·c > 0 against every generator.
    pub fn is_ample(&self, h: &LatticeClass) -> Result<bool, PicardError> {
        self.check(h)?;
        if !self.self_intersection(h)?.is_positive() {
            return Ok(false);
        }
        for c in self.curve_cone_generators()? {
            if !self.intersect(h, &c)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The inverse nef value of a nef class h: the largest t with
    /// h + tK nef, computed as min over generators c of (h·c)/((-K)·c).
    pub fn inverse_nef_value(&self, h: &LatticeClass) -> Result<Rat, PicardError> {
        if !self.is_nef(h)? {
            return Err(PicardError::NotNef);
        }
        let minus_k = self.minus_canonical();
        let mut best: Option<Rat> = None;
        for c in self.curve_cone_generators()? {
            let denom = self.intersect(&minus_k, &c)?;
            // -K is ample for n ≤ 8, so the denominator is positive.
            assert!(denom.is_positive(), "curve-cone generator with (-K)·c <= 0");
            let ratio = self.intersect(h, &c)? / denom;
            best = Some(match best {
                Some(b) if b <= ratio => b,
                _ => ratio,
            });
        }
        Ok(best.expect("curve cone has at least one generator"))
    }

    /// Classify the adjoint class M = h + t0·K of a nef class h.
    /// M² < 0 is impossible for nef h and is reported as a typed error.
    pub fn adjoint_class(&self, h: &LatticeClass) -> Result<AdjointClass, PicardError> {
        let t0 = self.inverse_nef_value(h)?;
        let m = h.add(&self.canonical_class().scaled(&t0));
        if m.is_zero() {
            return Ok(AdjointClass {
                nef_value: t0,
                class: m,
                kind: AdjointKind::Zero,
            });
        }
        let square = self.self_intersection(&m)?;
        if square.is_negative() {
            return Err(PicardError::AdjointNegativeSquare { square });
        }
        let kind = if square.is_zero() {
            AdjointKind::Fiber
        } else {
            AdjointKind::Big
        };
        Ok(AdjointClass {
            nef_value: t0,
            class: m,
            kind,
        })
    }

    /// Total transform under one blowup: same class, new exceptional
    /// coordinate zero (a lattice embedding Z^{1,n} → Z^{1,n+1}).
    pub fn total_transform(&self, c: &LatticeClass) -> Result<LatticeClass, PicardError> {
        self.check(c)?;
        let mut v = c.0.clone();
        v.push(Rat::zero());
        Ok(LatticeClass(v))
    }

    /// Proper transform under one blowup at a point of multiplicity m on
    /// the class: total transform minus m times the new exceptional class.
    pub fn proper_transform(&self, c: &LatticeClass, multiplicity: &Rat) -> Result<LatticeClass, PicardError> {
        self.check(c)?;
        let mut v = c.0.clone();
        v.push(-multiplicity.clone());
        Ok(LatticeClass(v))
    }

    /// Push-forward under blowing the last exceptional class down: drop
    /// the final coordinate.
    pub fn push_forward(&self, c: &LatticeClass) -> Result<LatticeClass, PicardError> {
        self.check(c)?;
        if self.n == 0 {
            return Err(PicardError::NothingToContract);
        }
        let mut v = c.0.clone();
        v.pop();
        Ok(LatticeClass(v))
    }

    /// Gram matrix of a set of classes.
    pub fn gram_matrix(&self, classes: &[LatticeClass]) -> Result<QMatrix, PicardError> {
        let mut rows = Vec::with_capacity(classes.len());
        for x in classes {
            let mut row = Vec::with_capacity(classes.len());
            for y in classes {
                row.push(self.intersect(x, y)?);
            }
            rows.push(row);
        }
        Ok(QMatrix::from_rows(rows))
    }

    /// Rank of the span of a set of classes.
    pub fn span_rank(&self, classes: &[LatticeClass]) -> Result<usize, PicardError> {
        for c in classes {
            self.check(c)?;
        }
        let rows: Vec<Vec<Rat>> = classes.iter().map(|c| c.0.clone()).collect();
        if rows.is_empty() {
            return Ok(0);
        }
        Ok(QMatrix::from_rows(rows).rank())
    }

    /// Solve for coefficients ci with (fixed + Σ ci·unknown_i)·test_j = 0.
    /// Needs exactly as many test classes as unknowns and a nonsingular
    /// pairing matrix.
    pub fn solve_boundary_coefficients(
        &self,
        fixed: &LatticeClass,
        unknowns: &[LatticeClass],
        tests: &[LatticeClass],
    ) -> Result<Vec<Rat>, PicardError> {
        if unknowns.len() != tests.len() {
            return Err(PicardError::ShapeMismatch {
                unknowns: unknowns.len(),
                tests: tests.len(),
            });
        }
        self.check(fixed)?;
        let mut rows = Vec::with_capacity(tests.len());
        let mut rhs = Vec::with_capacity(tests.len());
        for t in tests {
            let mut row = Vec::with_capacity(unknowns.len());
            for u in unknowns {
                row.push(self.intersect(u, t)?);
            }
            rows.push(row);
            rhs.push(-self.intersect(fixed, t)?);
        }
        QMatrix::from_rows(rows)
            .solve(&rhs)
            .ok_or(PicardError::SingularSystem)
    }

    /// Crepant pullback coefficients: solve
    /// (K + strict + Σ ci·Ei)·Ej = 0 for all exceptional Ej.
    /// Precondition: the exceptional Gram matrix is negative definite.
    pub fn crepant_pullback(&self, data: &ResolutionData) -> Result<CrepantCoefficients, PicardError> {
        assert_eq!(data.n, self.n, "resolution data built for a different lattice");
        let gram = self.gram_matrix(&data.exceptional)?;
        if !gram.is_negative_definite() {
            return Err(PicardError::NotNegativeDefinite);
        }
        let fixed = self.canonical_class().add(&data.strict);
        let coefficients =
            self.solve_boundary_coefficients(&fixed, &data.exceptional, &data.exceptional)?;
        let discrepancies = coefficients.iter().map(|c| -c).collect();
        Ok(CrepantCoefficients {
            coefficients,
            discrepancies,
        })
    }
}

/// Log-canonicity test on solved coefficients: every crepant coefficient
/// and every boundary coefficient is ≤ 1.
pub fn is_log_canonical(crepant: &[Rat], boundary: &[Rat]) -> bool {
    let one = Rat::one();
    crepant.iter().chain(boundary.iter()).all(|c| *c <= one)
}

fn isqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as i64;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Enumerate all integer vectors b (filled into `slot`) with
/// Σ b = `sum` and Σ b² = `square`, via per-coordinate bounds plus a
/// Cauchy–Schwarz feasibility cut on the remainder.
fn enumerate_b(slot: &mut Vec<i64>, idx: usize, sum: i64, square: i64, emit: &mut impl FnMut(&[i64])) {
    let remaining = slot.len() - idx;
    if remaining == 0 {
        if sum == 0 && square == 0 {
            emit(slot);
        }
        return;
    }
    if square < 0 {
        return;
    }
    let bound = isqrt(square);
    for b in -bound..=bound {
        let rest_sum = sum - b;
        let rest_square = square - b * b;
        if rest_square < 0 {
            continue;
        }
        // The remaining coordinates must satisfy (Σ rest)² ≤ m·Σ rest².
        let m = (remaining - 1) as i64;
        if m == 0 {
            if rest_sum != 0 || rest_square != 0 {
                continue;
            }
        } else if rest_sum * rest_sum > m * rest_square {
            continue;
        }
        slot[idx] = b;
        enumerate_b(slot, idx + 1, rest_sum, rest_square, emit);
    }
    slot[idx] = 0;
}
