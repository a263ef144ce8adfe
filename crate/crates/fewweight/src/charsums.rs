//! Character sums over F_q and F_{q^2}.
//!
//! The additive characters take values in the p-th cyclotomic integers, so
//! chi-only sums (s_sum, t_sum and everything derived from them) are exact:
//! elements of Z[zeta_p] with i64 coordinates. Multiplicative characters of
//! order q - 1 live in a larger cyclotomic ring, so the general Gauss sums
//! are evaluated in complex floats (1e-9 scale); the quadratic character is
//! integer-valued and keeps an exact path.
//!
//! Conventions, fixed once per field context:
//! * chi(x)  = zeta_p^Tr(x), with Tr the absolute trace of the field the
//!   argument lives in (`FieldKind` selects base vs extension);
//! * psi_j(delta^l) = zeta_{q-1}^(j l), with delta = gamma^(q+1);
//! * exponent e1 and e2 act through x^((q+1)e_i), so they matter mod q - 1,
//!   while e3 matters mod q^2 - 1.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::gcd;
use rayon::prelude::*;

use crate::fields::{FieldContext, FieldElement, FieldKind};
use crate::{Error, Result};

/// An element of Z[zeta_p], reduced against 1 + zeta + ... + zeta^(p-1) = 0:
/// coordinates n_0..n_(p-2) represent sum n_j zeta_p^j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicInt {
    p: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: u64) -> CyclotomicInt {
        assert!(p >= 2);
        CyclotomicInt {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn from_int(p: u64, n: i64) -> CyclotomicInt {
        let mut v = CyclotomicInt::zero(p);
        v.coeffs[0] = n;
        v
    }

    /// zeta_p^j.
    pub fn root(p: u64, j: u64) -> CyclotomicInt {
        CyclotomicInt::from_root_counts(p, |t| i64::from(t == j % p))
    }

    /// sum counts(t) * zeta_p^t for t in [0, p), folding zeta^(p-1) into the
    /// basis. This is the workhorse for character sums, which only ever
    /// accumulate multiplicities of each p-th root.
    pub fn from_root_counts(p: u64, counts: impl Fn(u64) -> i64) -> CyclotomicInt {
        let top = counts(p - 1);
        let coeffs = (0..p - 1).map(|j| counts(j) - top).collect();
        CyclotomicInt { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CyclotomicInt {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: i64) -> CyclotomicInt {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        // Convolve with exponents mod p (zeta^p = 1), then fold zeta^(p-1).
        let mut wrapped = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                wrapped[(i + j) % p] += a * b;
            }
        }
        CyclotomicInt::from_root_counts(self.p, |t| wrapped[t as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when the value lies in Z, i.e. all zeta coordinates above the
    /// constant vanish. For p = 2 every value is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn as_int(&self) -> Option<i64> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, &n)| n as f64 * Complex64::cis(TAU * j as f64 / self.p as f64))
            .sum()
    }
}

/// chi(x) = zeta_p^Tr(x), the canonical additive character of the field
/// selected by `kind`.
pub fn chi(ctx: &FieldContext, x: FieldElement, kind: FieldKind) -> CyclotomicInt {
    CyclotomicInt::root(ctx.p(), ctx.trace_abs(x, kind))
}

/// The exact exponent of psi_j at x = delta^l: (j l) mod (q - 1), so that
/// psi_j(x) = zeta_{q-1}^of-it. Panics on zero or non-F_q input.
pub fn psi_exponent(ctx: &FieldContext, j: i64, x: FieldElement) -> u64 {
    let k = match x {
        FieldElement::Zero => panic!("multiplicative character of zero"),
        FieldElement::Exp(k) => k,
    };
    assert!(k % (ctx.q() + 1) == 0, "psi over F_q of a non-F_q element");
    let l = (k / (ctx.q() + 1)) as i64;
    let n = (ctx.q() - 1) as i64;
    (j.rem_euclid(n) * l).rem_euclid(n) as u64
}

/// psi_j(x) as a complex number on the unit circle.
pub fn psi(ctx: &FieldContext, j: i64, x: FieldElement) -> Complex64 {
    let e = psi_exponent(ctx, j, x);
    Complex64::cis(TAU * e as f64 / (ctx.q() - 1) as f64)
}

/// The quadratic character of F_q*, +1 on squares and -1 otherwise.
/// Defined only for odd q and nonzero F_q arguments.
pub fn quadratic_character(ctx: &FieldContext, x: FieldElement) -> Result<i64> {
    if ctx.q() % 2 == 0 {
        return Err(Error::InvalidParameter(
            "quadratic character needs odd q".into(),
        ));
    }
    if x.is_zero() {
        return Err(Error::InvalidParameter(
            "quadratic character of zero".into(),
        ));
    }
    Ok(if psi_exponent(ctx, (ctx.q() as i64 - 1) / 2, x) == 0 {
        1
    } else {
        -1
    })
}

/// G(psi_j, chi) = sum over F_q* of psi_j(c) chi(c), in complex floats.
pub fn gauss_sum(ctx: &FieldContext, j: i64) -> Complex64 {
    ctx.nonzero_base_elements()
        .map(|c| psi(ctx, j, c) * chi(ctx, c, FieldKind::Base).to_complex())
        .sum()
}

/// The quadratic Gauss sum G(eta, chi), exactly: eta is integer-valued, so
/// the sum stays inside Z[zeta_p].
pub fn gauss_sum_quadratic(ctx: &FieldContext) -> Result<CyclotomicInt> {
    let mut acc = CyclotomicInt::zero(ctx.p());
    for c in ctx.nonzero_base_elements() {
        let eta = quadratic_character(ctx, c)?;
        acc = acc.add(&chi(ctx, c, FieldKind::Base).scale(eta));
    }
    Ok(acc)
}

/// Exponents and coefficients for the sums S, T and the root count Z.
/// e1, e2 act via x^((q+1)e_i) and are stored mod q - 1; e3 mod q^2 - 1.
/// a and b must lie in F_q.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SumParams {
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl SumParams {
    pub fn new(
        ctx: &FieldContext,
        e: (i64, i64, i64),
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    ) -> SumParams {
        assert!(ctx.is_in_base(a) && ctx.is_in_base(b), "a, b must lie in F_q");
        let (e1, e2, e3) = e;
        SumParams {
            e1: e1.rem_euclid((ctx.q() - 1) as i64) as u64,
            e2: e2.rem_euclid((ctx.q() - 1) as i64) as u64,
            e3: e3.rem_euclid(ctx.ext_order() as i64) as u64,
            a,
            b,
            c,
        }
    }
}

/// Conditions under which the four-dimensional family (and its value
/// distribution) is controlled: gcd(q+1, e3) = 1, gcd(q-1, e2-e1) = 1 and
/// e3 = e1 + e2 (mod q-1).
pub fn dim4_exponents_admissible(q: u64, e1: i64, e2: i64, e3: i64) -> bool {
    let n = (q * q - 1) as i64;
    gcd((q + 1) as i64, e3.rem_euclid(n)) == 1
        && gcd((q - 1) as i64, (e2 - e1).rem_euclid((q - 1) as i64)) == 1
        && (e3 - e1 - e2).rem_euclid((q - 1) as i64) == 0
}

/// Conditions for the three-dimensional family: gcd(e3, q^2-1) = 1 and
/// e3 = e2 (mod q-1).
pub fn dim3_exponents_admissible(q: u64, e2: i64, e3: i64) -> bool {
    let n = (q * q - 1) as i64;
    gcd(n, e3.rem_euclid(n)) == 1 && (e3 - e2).rem_euclid((q - 1) as i64) == 0
}

/// S(a,b,c) = sum over x in F_{q^2}* of chi(a x^((q+1)e1) + b x^((q+1)e2))
/// chi'(c x^e3), evaluated term by term.
pub fn s_sum(ctx: &FieldContext, params: &SumParams) -> CyclotomicInt {
    let p = ctx.p();
    let mut counts = vec![0i64; p as usize];
    for_each_orbit_term(ctx, params, |xa, xb, xc| {
        let t1 = ctx.trace_abs(ctx.add(xa, xb), FieldKind::Base);
        let t2 = ctx.trace_abs(xc, FieldKind::Ext);
        counts[((t1 + t2) % p) as usize] += 1;
    });
    CyclotomicInt::from_root_counts(p, |t| counts[t as usize])
}

/// The reduced double-sum form of S for c != 0 and gcd(q+1, e3) = 1:
/// -sum_{z in F_q*} sum_{x in F_q*} chi(z + a x^e1 + b x^e2 + z^-1 c^(q+1) x^e3).
/// Kept as a separate evaluation path so the reduction identity is testable.
pub fn s_sum_reduced_form(ctx: &FieldContext, params: &SumParams) -> CyclotomicInt {
    assert!(!params.c.is_zero(), "the reduced form needs c != 0");
    assert_eq!(
        gcd(ctx.q() + 1, params.e3),
        1,
        "the reduced form needs gcd(q+1, e3) = 1"
    );
    let p = ctx.p();
    let norm_c = ctx.norm(params.c);
    let mut counts = vec![0i64; p as usize];
    for z in ctx.nonzero_base_elements() {
        let z_inv_c = ctx.mul(ctx.inv(z), norm_c);
        for x in ctx.nonzero_base_elements() {
            let mut w = ctx.add(z, ctx.mul(params.a, ctx.pow(x, params.e1 as i64)));
            w = ctx.add(w, ctx.mul(params.b, ctx.pow(x, params.e2 as i64)));
            w = ctx.add(w, ctx.mul(z_inv_c, ctx.pow(x, params.e3 as i64)));
            counts[ctx.trace_abs(w, FieldKind::Base) as usize] += 1;
        }
    }
    CyclotomicInt::from_root_counts(p, |t| counts[t as usize]).neg()
}

/// T(a,b,c) = sum over y in F_q* of S(ya, yb, yc). Always a rational
/// integer: the Galois group of Q(zeta_p)/Q permutes the summands.
pub fn t_sum(ctx: &FieldContext, params: &SumParams) -> i64 {
    let mut acc = CyclotomicInt::zero(ctx.p());
    for y in ctx.nonzero_base_elements() {
        let scaled = SumParams {
            a: ctx.mul(y, params.a),
            b: ctx.mul(y, params.b),
            c: ctx.mul(y, params.c),
            ..*params
        };
        acc = acc.add(&s_sum(ctx, &scaled));
    }
    acc.as_int()
        .expect("t_sum must be rational; non-rational value means a field bug")
}

/// Z(a,b,c) = #{ 0 <= i < q^2-1 : a gamma^((q+1) i e1) + b gamma^((q+1) i e2)
/// + Tr_{F_{q^2}/F_q}(c gamma^(i e3)) = 0 }, counted directly.
pub fn z_count(ctx: &FieldContext, params: &SumParams) -> u64 {
    let mut zeros = 0;
    for_each_orbit_term(ctx, params, |xa, xb, xc| {
        let v = ctx.add(ctx.add(xa, xb), ctx.trace_rel(xc));
        if v.is_zero() {
            zeros += 1;
        }
    });
    zeros
}

/// Walks i = 0..q^2-2 handing over (a x^((q+1)e1), b x^((q+1)e2), c x^e3)
/// at x = gamma^i, updated incrementally.
fn for_each_orbit_term(
    ctx: &FieldContext,
    params: &SumParams,
    mut visit: impl FnMut(FieldElement, FieldElement, FieldElement),
) {
    let step1 = ctx.gamma_pow(((ctx.q() + 1) * params.e1) as i64);
    let step2 = ctx.gamma_pow(((ctx.q() + 1) * params.e2) as i64);
    let step3 = ctx.gamma_pow(params.e3 as i64);
    let (mut xa, mut xb, mut xc) = (params.a, params.b, params.c);
    for _ in 0..ctx.ext_order() {
        visit(xa, xb, xc);
        xa = ctx.mul(xa, step1);
        xb = ctx.mul(xb, step2);
        xc = ctx.mul(xc, step3);
    }
}

/// The closed-form value of T(a,b,c) under the admissibility conditions,
/// split over the seven coefficient cases.
pub fn expected_t_sum(ctx: &FieldContext, params: &SumParams) -> i64 {
    let q = ctx.q() as i64;
    let (a0, b0, c0) = (
        params.a.is_zero(),
        params.b.is_zero(),
        params.c.is_zero(),
    );
    if c0 {
        match (a0, b0) {
            (true, true) => (q - 1) * (q * q - 1),
            (true, false) | (false, true) => 1 - q * q,
            (false, false) => q + 1,
        }
    } else {
        match (a0, b0) {
            (true, true) => 1 - q,
            (true, false) | (false, true) => 1,
            (false, false) => {
                let ratio = ctx.mul(ctx.norm(params.c), ctx.inv(params.b));
                if params.a == ratio {
                    -q * q + q + 1
                } else {
                    q + 1
                }
            }
        }
    }
}

/// Tallies Z(a,b,c) over the full grid F_q x F_q x F_{q^2} (row-major:
/// a, then b, then c). Requires the dim-4 admissibility conditions; the
/// result should match `expected_z_distribution`.
pub fn value_distribution(
    ctx: &FieldContext,
    e1: i64,
    e2: i64,
    e3: i64,
) -> Result<BTreeMap<u64, u64>> {
    if !dim4_exponents_admissible(ctx.q(), e1, e2, e3) {
        return Err(Error::Inadmissible(
            vec![e1, e2, e3],
            "need gcd(q+1,e3)=1, gcd(q-1,e2-e1)=1 and e3=e1+e2 (mod q-1)".into(),
        ));
    }
    let base: Vec<FieldElement> = ctx.base_elements().collect();
    let ext: Vec<FieldElement> = ctx.elements().collect();
    let dist = base
        .par_iter()
        .map(|&a| {
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            for &b in &base {
                for &c in &ext {
                    let z = z_count(ctx, &SumParams::new(ctx, (e1, e2, e3), a, b, c));
                    *local.entry(z).or_insert(0) += 1;
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, local| {
            for (k, v) in local {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });
    Ok(dist)
}

/// The predicted value distribution of Z over the full coefficient grid:
/// six values with closed-form frequencies summing to q^4.
pub fn expected_z_distribution(q: u64) -> BTreeMap<u64, u64> {
    BTreeMap::from([
        (q * q - 1, 1),
        (0, 2 * (q - 1)),
        (q + 1, (q - 1) * (q - 1) * (q * q - q - 1)),
        (q - 1, q * q - 1),
        (q, 2 * (q * q - 1) * (q - 1)),
        (1, (q * q - 1) * (q - 1)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::ctx;
    use proptest::prelude::*;

    fn approx_eq(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn root_reduction_wraps_at_p() {
        // zeta_3^2 = -1 - zeta_3.
        let r = CyclotomicInt::root(3, 2);
        assert_eq!(r.coeffs(), &[-1, -1]);
        // zeta_2 = -1.
        assert_eq!(CyclotomicInt::root(2, 1).coeffs(), &[-1]);
        assert_eq!(CyclotomicInt::root(2, 0).coeffs(), &[1]);
        // zeta^p = 1.
        for p in [2u64, 3, 5, 7] {
            assert_eq!(CyclotomicInt::root(p, p), CyclotomicInt::from_int(p, 1));
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for p in [2u64, 3, 5, 7] {
            let mut acc = CyclotomicInt::zero(p);
            for j in 0..p {
                acc = acc.add(&CyclotomicInt::root(p, j));
            }
            assert!(acc.is_zero());
        }
    }

    proptest! {
        #[test]
        fn ring_laws_and_embedding(
            p_idx in 0usize..3,
            a in proptest::collection::vec(-6i64..6, 6),
            b in proptest::collection::vec(-6i64..6, 6),
            c in proptest::collection::vec(-6i64..6, 6),
        ) {
            let p = [3u64, 5, 7][p_idx];
            let take = |v: &[i64]| CyclotomicInt {
                p,
                coeffs: v[..(p - 1) as usize].to_vec(),
            };
            let (x, y, z) = (take(&a), take(&b), take(&c));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert!(approx_eq(x.mul(&y).to_complex(), x.to_complex() * y.to_complex()));
            prop_assert!(approx_eq(x.add(&y).to_complex(), x.to_complex() + y.to_complex()));
        }
    }

    #[test]
    fn chi_is_additive_to_multiplicative() {
        for (p, m) in [(3, 1), (2, 2), (5, 1)] {
            let c = ctx(p, m);
            assert_eq!(
                chi(c, FieldElement::Zero, FieldKind::Ext),
                CyclotomicInt::from_int(p, 1)
            );
            for x in c.elements() {
                for y in c.elements() {
                    let lhs = chi(c, c.add(x, y), FieldKind::Ext);
                    let rhs = chi(c, x, FieldKind::Ext).mul(&chi(c, y, FieldKind::Ext));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn chi_orthogonality_over_the_base_field() {
        for (p, m) in [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
            let c = ctx(p, m);
            for a in c.base_elements() {
                let mut acc = CyclotomicInt::zero(p);
                for x in c.nonzero_base_elements() {
                    acc = acc.add(&chi(c, c.mul(a, x), FieldKind::Base));
                }
                let expect = if a.is_zero() { c.q() as i64 - 1 } else { -1 };
                assert_eq!(acc, CyclotomicInt::from_int(p, expect), "a = {a:?}");
            }
        }
    }

    #[test]
    fn psi_sums_vanish_for_nontrivial_characters() {
        for (p, m) in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let c = ctx(p, m);
            for j in 1..(c.q() - 1) as i64 {
                let total: Complex64 = c.nonzero_base_elements().map(|x| psi(c, j, x)).sum();
                assert!(total.norm() < 1e-9, "q={}, j={j}", c.q());
            }
            // psi_0 is identically one.
            for x in c.nonzero_base_elements() {
                assert_eq!(psi_exponent(c, 0, x), 0);
            }
        }
    }

    #[test]
    fn quadratic_character_is_psi_at_half_order() {
        let c = ctx(7, 1);
        let squares: Vec<bool> = c
            .nonzero_base_elements()
            .map(|x| quadratic_character(c, x).unwrap() == 1)
            .collect();
        // Exactly (q-1)/2 squares among the nonzero elements.
        assert_eq!(squares.iter().filter(|&&s| s).count(), 3);
        // Multiplicativity.
        for x in c.nonzero_base_elements() {
            for y in c.nonzero_base_elements() {
                let lhs = quadratic_character(c, c.mul(x, y)).unwrap();
                let rhs = quadratic_character(c, x).unwrap() * quadratic_character(c, y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(quadratic_character(c, FieldElement::ONE).unwrap(), 1);
        assert_eq!(quadratic_character(c, c.delta_pow(1)).unwrap(), -1);
        assert!(quadratic_character(ctx(2, 2), FieldElement::ONE).is_err());
        assert!(quadratic_character(c, FieldElement::Zero).is_err());
    }

    #[test]
    fn gauss_sum_with_trivial_character_is_minus_one() {
        for (p, m) in [(3, 1), (2, 2), (5, 1), (7, 1)] {
            let c = ctx(p, m);
            assert!(approx_eq(gauss_sum(c, 0), Complex64::new(-1.0, 0.0)));
        }
    }

    #[test]
    fn gauss_sum_magnitudes() {
        for (p, m) in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let c = ctx(p, m);
            for j in 1..(c.q() - 1) as i64 {
                let g = gauss_sum(c, j);
                assert!(
                    (g.norm_sqr() - c.q() as f64).abs() < 1e-9,
                    "q={}, j={j}",
                    c.q()
                );
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_squares_exactly() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let c = ctx(p, m);
            let g = gauss_sum_quadratic(c).unwrap();
            let eta_minus_one = quadratic_character(c, c.neg(FieldElement::ONE)).unwrap();
            let expected = CyclotomicInt::from_int(p, eta_minus_one * c.q() as i64);
            assert_eq!(g.mul(&g), expected, "q = {}", c.q());
        }
    }

    #[test]
    fn s_sum_all_zero_coefficients_counts_the_group() {
        for (p, m) in [(3, 1), (2, 2)] {
            let c = ctx(p, m);
            let params = SumParams::new(
                c,
                (0, 1, 1),
                FieldElement::Zero,
                FieldElement::Zero,
                FieldElement::Zero,
            );
            assert_eq!(
                s_sum(c, &params),
                CyclotomicInt::from_int(p, c.ext_order() as i64)
            );
        }
    }

    #[test]
    fn s_sum_single_nonzero_base_coefficient() {
        // a = 0, c = 0, b != 0: x -> x^(q+1) covers each F_q* element q+1
        // times, so S = (q+1) * sum over F_q* of chi(b x) = -(q+1). Summing
        // over y b for y in F_q* then gives T = -(q^2-1), the Case-2 value.
        for (p, m) in [(3, 1), (2, 2), (5, 1)] {
            let c = ctx(p, m);
            let q = c.q() as i64;
            let params = SumParams::new(
                c,
                (0, 1, 1),
                FieldElement::Zero,
                FieldElement::ONE,
                FieldElement::Zero,
            );
            assert_eq!(s_sum(c, &params), CyclotomicInt::from_int(p, -(q + 1)));
            assert_eq!(t_sum(c, &params), 1 - q * q);
        }
    }

    #[test]
    fn reduction_identity_for_nonzero_c() {
        // Only c != 0 and gcd(q+1, e3) = 1 are required; e1, e2 arbitrary.
        for (p, m) in [(3, 1), (2, 2), (5, 1)] {
            let c = ctx(p, m);
            let q = c.q();
            let triples: Vec<(i64, i64, i64)> = (0..(q - 1) as i64)
                .flat_map(|e1| {
                    (0..(q - 1) as i64).flat_map(move |e2| {
                        (1..c.ext_order() as i64)
                            .filter(move |&e3| gcd((q + 1) as i64, e3) == 1)
                            .take(2)
                            .map(move |e3| (e1, e2, e3))
                    })
                })
                .collect();
            for (e1, e2, e3) in triples {
                for a in c.base_elements() {
                    for b in c.base_elements() {
                        for cc in c.nonzero_elements() {
                            let params = SumParams::new(c, (e1, e2, e3), a, b, cc);
                            assert_eq!(
                                s_sum(c, &params),
                                s_sum_reduced_form(c, &params),
                                "q={q} e=({e1},{e2},{e3}) a={a:?} b={b:?} c={cc:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn t_sum_matches_the_seven_case_table_exhaustively() {
        for (p, m, e) in [(3, 1, (0, 1, 1)), (2, 2, (0, 1, 1)), (2, 2, (1, 2, 3))] {
            let c = ctx(p, m);
            assert!(dim4_exponents_admissible(c.q(), e.0, e.1, e.2));
            for a in c.base_elements() {
                for b in c.base_elements() {
                    for cc in c.elements() {
                        let params = SumParams::new(c, e, a, b, cc);
                        assert_eq!(
                            t_sum(c, &params),
                            expected_t_sum(c, &params),
                            "q={} e={e:?} a={a:?} b={b:?} c={cc:?}",
                            c.q()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn z_count_satisfies_the_t_sum_identity() {
        // q * Z = (q^2 - 1) + T, here exhaustively at q = 3.
        let c = ctx(3, 1);
        for a in c.base_elements() {
            for b in c.base_elements() {
                for cc in c.elements() {
                    let params = SumParams::new(c, (0, 1, 1), a, b, cc);
                    let z = z_count(c, &params);
                    let t = t_sum(c, &params);
                    assert_eq!(
                        c.q() as i64 * z as i64,
                        (c.ext_order()) as i64 + t,
                        "a={a:?} b={b:?} c={cc:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn z_count_closed_form_spot_values() {
        let c = ctx(3, 1);
        let zero = FieldElement::Zero;
        // All coefficients zero: every position vanishes.
        let p000 = SumParams::new(c, (0, 1, 1), zero, zero, zero);
        assert_eq!(z_count(c, &p000), c.ext_order());
        // a = b = 0, c != 0: the relative trace has q - 1 zeros on the orbit.
        let p00c = SumParams::new(c, (0, 1, 1), zero, zero, c.gamma_pow(1));
        assert_eq!(z_count(c, &p00c), c.q() - 1);
        // a = norm(c)/b: the count drops to 1.
        let cc = c.gamma_pow(1);
        let b = c.delta_pow(1);
        let a = c.mul(c.norm(cc), c.inv(b));
        let p6 = SumParams::new(c, (0, 1, 1), a, b, cc);
        assert_eq!(z_count(c, &p6), 1);
    }

    #[test]
    fn value_distribution_matches_the_closed_form() {
        let c3 = ctx(3, 1);
        let d3 = value_distribution(c3, 0, 1, 1).unwrap();
        assert_eq!(
            d3,
            BTreeMap::from([(8, 1), (0, 4), (4, 20), (2, 8), (3, 32), (1, 16)])
        );
        assert_eq!(d3, expected_z_distribution(3));

        let c4 = ctx(2, 2);
        let d4 = value_distribution(c4, 0, 1, 1).unwrap();
        assert_eq!(
            d4,
            BTreeMap::from([(15, 1), (0, 6), (5, 99), (3, 15), (4, 90), (1, 45)])
        );
        assert_eq!(d4, expected_z_distribution(4));

        // Frequencies cover the whole q^4 grid.
        for (q, d) in [(3u64, &d3), (4, &d4)] {
            assert_eq!(d.values().sum::<u64>(), q.pow(4));
        }
    }

    #[test]
    fn value_distribution_rejects_inadmissible_exponents() {
        let c = ctx(3, 1);
        // e3 != e1 + e2 (mod q-1).
        assert!(matches!(
            value_distribution(c, 0, 1, 2),
            Err(Error::Inadmissible(_, _))
        ));
        // gcd(q+1, e3) > 1.
        assert!(!dim4_exponents_admissible(3, 0, 1, 4));
        // gcd(q-1, e2 - e1) > 1.
        assert!(!dim4_exponents_admissible(3, 0, 2, 2));
    }

    #[test]
    fn dim3_admissibility_implies_the_dim4_conditions() {
        // With e1 = 0: gcd(e3, q^2-1) = 1 and e3 = e2 (mod q-1) imply the
        // three dim-4 conditions.
        for q in [3u64, 4, 5, 7, 8, 9] {
            for e2 in 0..(q - 1) as i64 {
                for e3 in 0..(q * q - 1) as i64 {
                    if dim3_exponents_admissible(q, e2, e3) {
                        assert!(dim4_exponents_admissible(q, 0, e2, e3), "q={q} ({e2},{e3})");
                        let n = (q * q - 1) as i64;
                        assert_eq!(gcd((q + 1) as i64, e3.rem_euclid(n)), 1);
                        assert_eq!(
                            gcd((q - 1) as i64, (2 * e2 - e3).rem_euclid((q - 1) as i64)),
                            1
                        );
                    }
                }
            }
        }
    }
}
