//! Log-domain arithmetic for F_{q^2} and its base field F_q, q = p^m.
//!
//! The extension field is built once per (p, m) pair and is fully
//! deterministic:
//!
//! * the modulus is the lexicographically smallest monic irreducible
//!   polynomial of degree 2m over F_p, comparing coefficient vectors
//!   low-to-high as integers;
//! * the primitive element gamma is the element of multiplicative order
//!   q^2 - 1 with the smallest polynomial-basis integer encoding
//!   (sum c_i p^i);
//! * F_q sits inside F_{q^2} as {0} plus the powers of delta = gamma^(q+1),
//!   so membership is just a divisibility test on the exponent.
//!
//! Elements are discrete logs with respect to gamma. Addition goes through a
//! Zech table, everything else is exponent arithmetic, so all field ops are
//! O(1) table lookups after construction.

use crate::{Error, Result};

/// Default ceiling on q. Everything downstream is exhaustive-enumeration
/// scale (q^4 codewords, q^6 sweep steps), so the bound keeps a typo from
/// turning into an hours-long run. Raise it explicitly when needed.
pub const DEFAULT_MAX_Q: u64 = 16;

/// Writes q as p^m with p prime, or reports that it is not a prime power.
pub fn prime_power_decompose(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    let mut f = 2;
    while f * f <= q {
        if q % f == 0 {
            p = f;
            break;
        }
        f += 1;
    }
    let mut m = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, m))
}

/// An element of F_{q^2}: zero, or gamma^k with 0 <= k < q^2 - 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FieldElement {
    Zero,
    Exp(u64),
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement::Zero;
    pub const ONE: FieldElement = FieldElement::Exp(0);

    pub fn is_zero(self) -> bool {
        self == FieldElement::Zero
    }
}

/// Which field a trace or character is taken over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldKind {
    /// F_q.
    Base,
    /// F_{q^2}.
    Ext,
}

/// F_{q^2} with all lookup tables precomputed. Elements only make sense
/// relative to the context that produced them; mixing contexts is a caller
/// bug (exponents are interpreted against this context's gamma).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldContext {
    p: u64,
    m: u32,
    q: u64,
    /// q^2 - 1, the multiplicative order of F_{q^2}* and the code length.
    ext_order: u64,
    /// Monic modulus of degree 2m over F_p, coefficients low-to-high.
    modulus: Vec<u64>,
    /// gamma in the polynomial basis, coefficients low-to-high.
    gamma_poly: Vec<u64>,
    /// k -> polynomial-basis encoding of gamma^k.
    antilog: Vec<u64>,
    /// encoding -> k; log[0] is unused (zero has no log).
    log: Vec<u64>,
    /// k -> 1 + gamma^k, as a field element.
    zech: Vec<FieldElement>,
}

impl FieldContext {
    /// Builds F_{q^2} for q = p^m under the default size bound.
    pub fn build(p: u64, m: u32) -> Result<FieldContext> {
        FieldContext::build_with_max_q(p, m, DEFAULT_MAX_Q)
    }

    /// Builds F_{q^2} for q = p^m, allowing q up to `max_q`.
    pub fn build_with_max_q(p: u64, m: u32, max_q: u64) -> Result<FieldContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q.checked_mul(q).is_some())
            .ok_or_else(|| Error::InvalidParameter(format!("p^m overflows: p={p}, m={m}")))?;
        if q > max_q {
            return Err(Error::BoundExceeded { q, max: max_q });
        }

        let deg = 2 * m as usize;
        let modulus = smallest_irreducible(p, deg);
        let ext_order = q * q - 1;

        // gamma: smallest encoding of full multiplicative order.
        let order_factors = prime_factors(ext_order);
        let mut gamma_enc = None;
        for enc in 2..q * q {
            if element_order_is(enc, ext_order, &order_factors, &modulus, p) {
                gamma_enc = Some(enc);
                break;
            }
        }
        let gamma_enc = gamma_enc.expect("F_{q^2}* is cyclic, a generator exists");

        let mut antilog = vec![0u64; ext_order as usize];
        let mut log = vec![u64::MAX; (q * q) as usize];
        let mut cur = 1u64;
        for (k, slot) in antilog.iter_mut().enumerate() {
            *slot = cur;
            debug_assert_eq!(log[cur as usize], u64::MAX, "gamma order too small");
            log[cur as usize] = k as u64;
            cur = poly_mul_mod(cur, gamma_enc, &modulus, p);
        }
        debug_assert_eq!(cur, 1, "gamma^(q^2-1) must be 1");

        let one_plus = |enc: u64| -> FieldElement {
            let s = enc_add(enc, 1, p, deg);
            if s == 0 {
                FieldElement::Zero
            } else {
                FieldElement::Exp(log[s as usize])
            }
        };
        let zech: Vec<FieldElement> = antilog.iter().map(|&e| one_plus(e)).collect();

        Ok(FieldContext {
            p,
            m,
            q,
            ext_order,
            modulus,
            gamma_poly: enc_digits(gamma_enc, p, deg),
            antilog,
            log,
            zech,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// q^2 - 1: group order of F_{q^2}* and the length of every code here.
    pub fn ext_order(&self) -> u64 {
        self.ext_order
    }

    /// delta = gamma^(q+1) generates F_q*.
    pub fn delta_exp(&self) -> u64 {
        self.q + 1
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn gamma_coeffs(&self) -> &[u64] {
        &self.gamma_poly
    }

    /// Polynomial-basis integer encoding of an element.
    pub fn encoding(&self, x: FieldElement) -> u64 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(k) => self.antilog[k as usize],
        }
    }

    pub fn from_encoding(&self, enc: u64) -> FieldElement {
        if enc == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(self.log[enc as usize])
        }
    }

    /// An integer 0 <= c < p as an element of the prime field.
    pub fn from_prime_int(&self, c: u64) -> FieldElement {
        self.from_encoding(c % self.p)
    }

    pub fn gamma_pow(&self, k: i64) -> FieldElement {
        FieldElement::Exp(k.rem_euclid(self.ext_order as i64) as u64)
    }

    pub fn delta_pow(&self, j: i64) -> FieldElement {
        let j = j.rem_euclid((self.q - 1) as i64) as u64;
        FieldElement::Exp((self.q + 1) * j % self.ext_order)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        use FieldElement::*;
        match (x, y) {
            (Zero, _) => y,
            (_, Zero) => x,
            (Exp(a), Exp(b)) => {
                let d = (b + self.ext_order - a) % self.ext_order;
                match self.zech[d as usize] {
                    Zero => Zero,
                    Exp(z) => Exp((a + z) % self.ext_order),
                }
            }
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        match x {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(k) => {
                if self.p == 2 {
                    FieldElement::Exp(k)
                } else {
                    FieldElement::Exp((k + self.ext_order / 2) % self.ext_order)
                }
            }
        }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        use FieldElement::*;
        match (x, y) {
            (Zero, _) | (_, Zero) => Zero,
            (Exp(a), Exp(b)) => Exp((a + b) % self.ext_order),
        }
    }

    /// Panics on zero, like integer division by zero.
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        match x {
            FieldElement::Zero => panic!("inverse of zero"),
            FieldElement::Exp(k) => FieldElement::Exp((self.ext_order - k) % self.ext_order),
        }
    }

    /// x^e for any integer e; negative e inverts first (panics on zero).
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        match x {
            FieldElement::Zero => match e {
                0 => FieldElement::ONE,
                _ if e > 0 => FieldElement::Zero,
                _ => panic!("negative power of zero"),
            },
            FieldElement::Exp(k) => {
                let n = self.ext_order as i128;
                FieldElement::Exp((k as i128 * e as i128).rem_euclid(n) as u64)
            }
        }
    }

    /// The Frobenius of the base field extension: x -> x^q.
    pub fn frobenius_q(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.q as i64)
    }

    pub fn is_in_base(&self, x: FieldElement) -> bool {
        match x {
            FieldElement::Zero => true,
            FieldElement::Exp(k) => k % (self.q + 1) == 0,
        }
    }

    /// Tr_{F_{q^2}/F_q}(x) = x + x^q. Always lands in F_q.
    pub fn trace_rel(&self, x: FieldElement) -> FieldElement {
        let t = self.add(x, self.frobenius_q(x));
        debug_assert!(self.is_in_base(t));
        t
    }

    /// N_{F_{q^2}/F_q}(x) = x^(q+1). Always lands in F_q.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.pow(x, (self.q + 1) as i64)
    }

    /// Absolute trace down to F_p, as an integer in [0, p). `kind` selects
    /// the field the argument lives in (Base requires an F_q element).
    pub fn trace_abs(&self, x: FieldElement, kind: FieldKind) -> u64 {
        let reps = match kind {
            FieldKind::Base => {
                assert!(self.is_in_base(x), "trace over F_q of a non-F_q element");
                self.m
            }
            FieldKind::Ext => 2 * self.m,
        };
        let mut acc = FieldElement::Zero;
        let mut cur = x;
        for _ in 0..reps {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p as i64);
        }
        let enc = self.encoding(acc);
        assert!(enc < self.p, "absolute trace must land in the prime field");
        enc
    }

    /// Symbol order for complete weight enumerators: u_0 = 0 and
    /// u_i = delta^(i-1) for 1 <= i <= q-1.
    pub fn symbol_index(&self, x: FieldElement) -> usize {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(k) => {
                assert!(k % (self.q + 1) == 0, "symbol of a non-F_q element");
                (k / (self.q + 1) + 1) as usize
            }
        }
    }

    pub fn symbol(&self, i: usize) -> FieldElement {
        if i == 0 {
            FieldElement::Zero
        } else {
            assert!((i as u64) < self.q, "symbol index out of range");
            self.delta_pow(i as i64 - 1)
        }
    }

    /// All of F_{q^2}, zero first, then ascending powers of gamma.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        std::iter::once(FieldElement::Zero).chain((0..self.ext_order).map(FieldElement::Exp))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.ext_order).map(FieldElement::Exp)
    }

    /// All of F_q in symbol order: zero, then ascending powers of delta.
    pub fn base_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::Zero).chain(self.nonzero_base_elements())
    }

    pub fn nonzero_base_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q - 1).map(move |j| FieldElement::Exp((self.q + 1) * j % self.ext_order))
    }

    /// The q-cyclotomic coset of a mod q^2 - 1 (size 1 or 2), sorted.
    pub fn cyclotomic_coset(&self, a: i64) -> Vec<u64> {
        let n = self.ext_order;
        let a = a.rem_euclid(n as i64) as u64;
        let b = a * self.q % n;
        if a == b {
            vec![a]
        } else {
            vec![a.min(b), a.max(b)]
        }
    }

    pub fn coset_rep(&self, a: i64) -> u64 {
        self.cyclotomic_coset(a)[0]
    }

    /// Minimal polynomial over F_q of gamma^(-a). Degree 1 when (q+1) | a,
    /// degree 2 otherwise.
    pub fn minimal_poly(&self, a: i64) -> Polynomial {
        let n = self.ext_order as i64;
        let neg_a = (-a).rem_euclid(n);
        let mut h = Polynomial::one();
        for &e in &self.cyclotomic_coset(neg_a) {
            let root = FieldElement::Exp(e);
            let factor = Polynomial::new(vec![self.neg(root), FieldElement::ONE]);
            h = h.mul(&factor, self);
        }
        debug_assert!(h.is_base(self), "minimal poly coefficients must lie in F_q");
        h
    }

    pub fn format_element(&self, x: FieldElement) -> String {
        match x {
            FieldElement::Zero => "0".into(),
            FieldElement::Exp(k) => format!("g^{k}"),
        }
    }

    /// FNV-1a over the Zech table, for quick fingerprinting of a build.
    pub fn zech_checksum(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |v: u64| {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        for entry in &self.zech {
            eat(match entry {
                FieldElement::Zero => u64::MAX,
                FieldElement::Exp(k) => *k,
            });
        }
        h
    }
}

/// Polynomial with coefficients in F_{q^2} (usually F_q), low degree first,
/// kept free of trailing zeros so derived equality is structural equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last() == Some(&FieldElement::Zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Polynomial {
        Polynomial {
            coeffs: vec![FieldElement::ONE],
        }
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize, ctx: &FieldContext) -> Polynomial {
        let mut coeffs = vec![FieldElement::Zero; n + 1];
        coeffs[0] = ctx.neg(FieldElement::ONE);
        coeffs[n] = FieldElement::ONE;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn is_base(&self, ctx: &FieldContext) -> bool {
        self.coeffs.iter().all(|&c| ctx.is_in_base(c))
    }

    pub fn add(&self, rhs: &Polynomial, ctx: &FieldContext) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(FieldElement::Zero);
        Polynomial::new(
            (0..len)
                .map(|i| ctx.add(get(self, i), get(rhs, i)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Polynomial, ctx: &FieldContext) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::Zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Polynomial::new(out)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divmod(&self, divisor: &Polynomial, ctx: &FieldContext) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.degree().unwrap();
        let lead_inv = ctx.inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::Zero; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = ctx.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c;
            for (j, &m) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = ctx.sub(rem[i - d + j], ctx.mul(c, m));
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn eval(&self, x: FieldElement, ctx: &FieldContext) -> FieldElement {
        let mut acc = FieldElement::Zero;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// x^deg * f(1/x), rescaled monic. Needs a nonzero constant term.
    pub fn reciprocal_monic(&self, ctx: &FieldContext) -> Polynomial {
        assert!(
            !self.is_zero() && !self.coeffs[0].is_zero(),
            "reciprocal needs a nonzero constant term"
        );
        let mut coeffs: Vec<FieldElement> = self.coeffs.iter().rev().copied().collect();
        let lead_inv = ctx.inv(*coeffs.last().unwrap());
        for c in &mut coeffs {
            *c = ctx.mul(*c, lead_inv);
        }
        Polynomial::new(coeffs)
    }

    /// Coefficients as symbol indices (0 for zero, 1 + j for delta^j).
    pub fn symbol_coeffs(&self, ctx: &FieldContext) -> Vec<usize> {
        self.coeffs.iter().map(|&c| ctx.symbol_index(c)).collect()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn enc_digits(enc: u64, p: u64, len: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(len);
    let mut e = enc;
    for _ in 0..len {
        v.push(e % p);
        e /= p;
    }
    v
}

fn digits_enc(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Coefficient-wise sum of two encodings (polynomial-basis addition).
fn enc_add(a: u64, b: u64, p: u64, len: usize) -> u64 {
    let da = enc_digits(a, p, len);
    let db = enc_digits(b, p, len);
    let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    digits_enc(&sum, p)
}

/// Product of two encodings modulo the (monic) modulus, over F_p.
fn poly_mul_mod(a: u64, b: u64, modulus: &[u64], p: u64) -> u64 {
    let deg = modulus.len() - 1;
    let da = enc_digits(a, p, deg);
    let db = enc_digits(b, p, deg);
    let mut prod = vec![0u64; 2 * deg - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &mj) in modulus.iter().enumerate().take(deg) {
            prod[i - deg + j] = (prod[i - deg + j] + c * (p - mj) % p) % p;
        }
    }
    digits_enc(&prod[..deg], p)
}

/// Remainder of f by monic g, both as coefficient vectors over F_p.
fn fp_poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    debug_assert_eq!(g[dg], 1);
    let mut r = f.to_vec();
    for i in (dg..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        r[i] = 0;
        for (j, &gj) in g.iter().enumerate().take(dg) {
            r[i - dg + j] = (r[i - dg + j] + c * (p - gj) % p) % p;
        }
    }
    r.truncate(dg);
    r
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree up to deg/2. Desk scale: the candidate count is at most ~p^m.
fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for enc in 0..p.pow(d as u32) {
            let mut g = enc_digits(enc, p, d);
            g.push(1);
            if fp_poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of the given degree,
/// comparing coefficients low-to-high.
fn smallest_irreducible(p: u64, deg: usize) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for enc in 0..p.pow(deg as u32) {
        let mut f = enc_digits(enc, p, deg);
        f.push(1);
        if !fp_irreducible(&f, p) {
            continue;
        }
        let low = f[..deg].to_vec();
        if best.as_ref().is_none_or(|b| low[..] < b[..deg]) {
            best = Some(f);
        }
    }
    best.expect("irreducible polynomials exist in every degree")
}

fn element_order_is(enc: u64, order: u64, order_primes: &[u64], modulus: &[u64], p: u64) -> bool {
    let pow = |mut base: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(acc, base, modulus, p);
            }
            base = poly_mul_mod(base, base, modulus, p);
            e >>= 1;
        }
        acc
    };
    if pow(enc, order) != 1 {
        return false;
    }
    order_primes.iter().all(|&r| pow(enc, order / r) != 1)
}
