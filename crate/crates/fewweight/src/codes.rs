//! Cyclic codes of length n = q^2 - 1 over F_q, given by check exponents.
//!
//! A code here is determined by a list of exponents a_1..a_l: its
//! parity-check polynomial is the product of the minimal polynomials of
//! gamma^(-a_i). Codewords are enumerated two independent ways:
//!
//! * the trace form: position i of a codeword is the sum over terms of
//!   x_j gamma^(a_j i) (degree-1 term, x_j in F_q) or
//!   Tr_{F_{q^2}/F_q}(x_j gamma^(a_j i)) (degree-2 term, x_j in F_{q^2});
//! * the polynomial form: multiples of the generator g = (x^n - 1) / h.
//!
//! The two must produce the same set; `codes_equal_as_sets` makes that an
//! assertable fact rather than an assumption.
//!
//! Counts are big integers throughout: dual distributions of the larger
//! fields overflow u64 comfortably.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charsums::{self, SumParams};
use crate::fields::{FieldContext, FieldElement, Polynomial};
use crate::{Error, Result};

/// A cyclic code of length q^2 - 1, described by its check exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSpec {
    exponents: Vec<u64>,
    degrees: Vec<usize>,
    n: usize,
    k: usize,
    h: Polynomial,
    g: Polynomial,
}

impl CodeSpec {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Parity-check polynomial (product of the minimal polynomials).
    pub fn check_poly(&self) -> &Polynomial {
        &self.h
    }

    pub fn generator_poly(&self) -> &Polynomial {
        &self.g
    }

    /// Degrees of the individual check factors, parallel to `exponents`.
    pub fn factor_degrees(&self) -> &[usize] {
        &self.degrees
    }
}

/// Builds the cyclic code with parity check prod_i h_{a_i}. The exponents
/// must induce pairwise distinct minimal polynomials.
pub fn build_code(ctx: &FieldContext, exponents: &[i64]) -> Result<CodeSpec> {
    if exponents.is_empty() {
        return Err(Error::InvalidParameter("no check exponents given".into()));
    }
    let n = ctx.ext_order() as usize;
    let reduced: Vec<u64> = exponents
        .iter()
        .map(|&a| a.rem_euclid(n as i64) as u64)
        .collect();
    let mut reps: Vec<u64> = vec![];
    for (idx, &a) in reduced.iter().enumerate() {
        let rep = ctx.coset_rep(a as i64);
        if let Some(prev) = reps.iter().position(|&r| r == rep) {
            return Err(Error::DuplicateCheckPolynomial(
                reduced[prev] as u64,
                a,
            ));
        }
        let _ = idx;
        reps.push(rep);
    }
    let mut h = Polynomial::one();
    let mut degrees = vec![];
    for &a in &reduced {
        let factor = ctx.minimal_poly(a as i64);
        degrees.push(factor.degree().unwrap());
        h = h.mul(&factor, ctx);
    }
    let k = h.degree().unwrap();
    let (g, rem) = Polynomial::x_pow_minus_one(n, ctx).divmod(&h, ctx);
    assert!(rem.is_zero(), "check polynomial must divide x^n - 1");
    Ok(CodeSpec {
        exponents: reduced,
        degrees,
        n,
        k,
        h,
        g,
    })
}

/// The check exponents of the four-dimensional family member with
/// parameters (e1, e2, e3): ((q+1)e1, (q+1)e2, e3).
pub fn dim4_family_exponents(ctx: &FieldContext, e1: i64, e2: i64, e3: i64) -> [i64; 3] {
    let d = (ctx.q() + 1) as i64;
    [d * e1, d * e2, e3]
}

/// The check exponents of the three-dimensional family member: ((q+1)e2, e3).
pub fn dim3_family_exponents(ctx: &FieldContext, e2: i64, e3: i64) -> [i64; 2] {
    [(ctx.q() + 1) as i64 * e2, e3]
}

/// Four-dimensional family constructor: requires q >= 3 and the
/// admissibility conditions.
pub fn dim4_code(ctx: &FieldContext, e1: i64, e2: i64, e3: i64) -> Result<CodeSpec> {
    if ctx.q() == 2 {
        return Err(Error::BinaryField);
    }
    if !charsums::dim4_exponents_admissible(ctx.q(), e1, e2, e3) {
        return Err(Error::Inadmissible(
            vec![e1, e2, e3],
            "need gcd(q+1,e3)=1, gcd(q-1,e2-e1)=1 and e3=e1+e2 (mod q-1)".into(),
        ));
    }
    build_code(ctx, &dim4_family_exponents(ctx, e1, e2, e3))
}

/// Three-dimensional family constructor: requires q >= 3,
/// gcd(e3, q^2-1) = 1 and e3 = e2 (mod q-1).
pub fn dim3_code(ctx: &FieldContext, e2: i64, e3: i64) -> Result<CodeSpec> {
    if ctx.q() == 2 {
        return Err(Error::BinaryField);
    }
    if !charsums::dim3_exponents_admissible(ctx.q(), e2, e3) {
        return Err(Error::Inadmissible(
            vec![e2, e3],
            "need gcd(e3, q^2-1) = 1 and e3 = e2 (mod q-1)".into(),
        ));
    }
    build_code(ctx, &dim3_family_exponents(ctx, e2, e3))
}

/// A length-n word over F_q.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Codeword(pub Vec<FieldElement>);

impl Codeword {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|e| !e.is_zero()).count()
    }

    /// Symbol multiplicities (t_0, ..., t_{q-1}) in the fixed symbol order
    /// u_0 = 0, u_i = delta^(i-1).
    pub fn composition(&self, ctx: &FieldContext) -> Vec<u32> {
        let mut t = vec![0u32; ctx.q() as usize];
        for &e in &self.0 {
            t[ctx.symbol_index(e)] += 1;
        }
        t
    }

    pub fn rotated(&self, by: usize) -> Codeword {
        let n = self.0.len();
        Codeword((0..n).map(|i| self.0[(i + n - by % n) % n]).collect())
    }
}

/// Number of messages (= codewords) of the trace form: q^k.
pub fn message_count(ctx: &FieldContext, spec: &CodeSpec) -> u64 {
    spec.degrees
        .iter()
        .map(|&d| ctx.q().pow(d as u32))
        .product()
}

/// Decodes a message index into one field element per check exponent,
/// row-major (the first exponent varies slowest). Element order per slot:
/// zero, then ascending powers of delta (degree 1) or gamma (degree 2).
pub fn message_elements(ctx: &FieldContext, spec: &CodeSpec, index: u64) -> Vec<FieldElement> {
    let mut radices: Vec<u64> = spec
        .degrees
        .iter()
        .map(|&d| ctx.q().pow(d as u32))
        .collect();
    let mut out = Vec::with_capacity(radices.len());
    let mut rest = index;
    radices.reverse();
    let mut digits: Vec<u64> = radices
        .iter()
        .map(|&r| {
            let d = rest % r;
            rest /= r;
            d
        })
        .collect();
    digits.reverse();
    for (slot, (&digit, &deg)) in digits.iter().zip(&spec.degrees).enumerate() {
        let _ = slot;
        out.push(match (digit, deg) {
            (0, _) => FieldElement::Zero,
            (d, 1) => ctx.delta_pow(d as i64 - 1),
            (d, _) => ctx.gamma_pow(d as i64 - 1),
        });
    }
    out
}

/// The trace-form codeword for one message tuple.
pub fn trace_codeword(ctx: &FieldContext, spec: &CodeSpec, message: &[FieldElement]) -> Codeword {
    assert_eq!(message.len(), spec.exponents.len());
    let steps: Vec<FieldElement> = spec
        .exponents
        .iter()
        .map(|&a| ctx.gamma_pow(a as i64))
        .collect();
    let mut cur: Vec<FieldElement> = message.to_vec();
    let mut word = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let mut sum = FieldElement::Zero;
        for (t, (&x, &deg)) in cur.iter().zip(&spec.degrees).enumerate() {
            let term = if deg == 1 { x } else { ctx.trace_rel(x) };
            sum = ctx.add(sum, term);
            let _ = t;
        }
        word.push(sum);
        for (x, &s) in cur.iter_mut().zip(&steps) {
            *x = ctx.mul(*x, s);
        }
    }
    Codeword(word)
}

/// Codeword of the four-dimensional family for coefficients (a, b, c):
/// position i is a gamma^((q+1) e1 i) + b gamma^((q+1) e2 i)
/// + Tr_{F_{q^2}/F_q}(c gamma^(e3 i)).
pub fn trace_codeword_dim4(
    ctx: &FieldContext,
    e: (i64, i64, i64),
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
) -> Codeword {
    assert!(ctx.is_in_base(a) && ctx.is_in_base(b));
    let qp1 = (ctx.q() + 1) as i64;
    let steps = [
        ctx.gamma_pow(qp1 * e.0),
        ctx.gamma_pow(qp1 * e.1),
        ctx.gamma_pow(e.2),
    ];
    let (mut xa, mut xb, mut xc) = (a, b, c);
    let mut word = Vec::with_capacity(ctx.ext_order() as usize);
    for _ in 0..ctx.ext_order() {
        word.push(ctx.add(ctx.add(xa, xb), ctx.trace_rel(xc)));
        xa = ctx.mul(xa, steps[0]);
        xb = ctx.mul(xb, steps[1]);
        xc = ctx.mul(xc, steps[2]);
    }
    Codeword(word)
}

/// Codeword of the three-dimensional family for coefficients (b, c):
/// position i is b gamma^((q+1) e2 i) + Tr_{F_{q^2}/F_q}(c gamma^(e3 i)).
pub fn trace_codeword_dim3(
    ctx: &FieldContext,
    e2: i64,
    e3: i64,
    b: FieldElement,
    c: FieldElement,
) -> Codeword {
    trace_codeword_dim4(ctx, (0, e2, e3), FieldElement::Zero, b, c)
}

/// All codewords in trace form, sorted, for set comparisons. Only sensible
/// at desk scale (q^k words of length n).
pub fn trace_code_set(ctx: &FieldContext, spec: &CodeSpec) -> Vec<Codeword> {
    let mut words: Vec<Codeword> = (0..message_count(ctx, spec))
        .map(|i| trace_codeword(ctx, spec, &message_elements(ctx, spec, i)))
        .collect();
    words.sort();
    words
}

/// All codewords as multiples of a degree-(n-k) generator: m(x) g(x) with
/// deg m < k, so no reduction mod x^n - 1 is ever needed.
fn generator_multiples(ctx: &FieldContext, g: &Polynomial, dim: usize, n: usize) -> Vec<Codeword> {
    let q = ctx.q();
    let total = q.pow(dim as u32);
    let mut words = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut digits = idx;
        let coeffs: Vec<FieldElement> = (0..dim)
            .map(|_| {
                let d = digits % q;
                digits /= q;
                if d == 0 {
                    FieldElement::Zero
                } else {
                    ctx.delta_pow(d as i64 - 1)
                }
            })
            .collect();
        let m = Polynomial::new(coeffs);
        let prod = m.mul(g, ctx);
        debug_assert!(prod.degree().is_none_or(|d| d < n));
        let mut word = prod.coeffs().to_vec();
        word.resize(n, FieldElement::Zero);
        words.push(Codeword(word));
    }
    words.sort();
    words
}

/// The code as the set of generator multiples, sorted.
pub fn polynomial_code_set(ctx: &FieldContext, spec: &CodeSpec) -> Vec<Codeword> {
    generator_multiples(ctx, &spec.g, spec.k, spec.n)
}

/// The dual code as a sorted set: cyclic with generator polynomial the
/// monic reciprocal of the parity check, dimension n - k.
pub fn dual_code_set(ctx: &FieldContext, spec: &CodeSpec) -> Vec<Codeword> {
    let g_dual = spec.h.reciprocal_monic(ctx);
    generator_multiples(ctx, &g_dual, spec.n - spec.k, spec.n)
}

/// Set equality of two sorted codeword lists.
pub fn codes_equal_as_sets(a: &[Codeword], b: &[Codeword]) -> bool {
    a == b
}

/// Trace enumeration and polynomial enumeration agree for this code.
pub fn equivalence_check(ctx: &FieldContext, spec: &CodeSpec) -> bool {
    codes_equal_as_sets(
        &trace_code_set(ctx, spec),
        &polynomial_code_set(ctx, spec),
    )
}

/// Weight distribution of a code: weight -> number of codewords.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn new(n: usize, k: usize, q: u64) -> WeightDistribution {
        WeightDistribution {
            n,
            k,
            q,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I: IntoIterator<Item = (usize, u64)>>(
        n: usize,
        k: usize,
        q: u64,
        counts: I,
    ) -> WeightDistribution {
        WeightDistribution {
            n,
            k,
            q,
            counts: counts
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(w, c)| (w, BigUint::from(c)))
                .collect(),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Minimum distance, i.e. the smallest nonzero weight present.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts
            .iter()
            .find(|&(&w, c)| w > 0 && !c.is_zero())
            .map(|(&w, _)| w)
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Renders "1 + 20z^4 + 32z^5 + ..." with ascending weights; a count of
    /// one prints as a bare power.
    pub fn enumerator_string(&self) -> String {
        let mut parts = vec![];
        for (&w, count) in &self.counts {
            if count.is_zero() {
                continue;
            }
            parts.push(if w == 0 {
                count.to_string()
            } else if count.is_one() {
                format!("z^{w}")
            } else {
                format!("{count}z^{w}")
            });
        }
        parts.join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WeightDistributionJson::from(self)).unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<WeightDistribution> {
        let dto: WeightDistributionJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParameter(format!("bad weight distribution: {e}")))?;
        dto.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct WeightDistributionJson {
    n: usize,
    k: usize,
    q: u64,
    weights: BTreeMap<String, String>,
}

impl From<&WeightDistribution> for WeightDistributionJson {
    fn from(w: &WeightDistribution) -> WeightDistributionJson {
        WeightDistributionJson {
            n: w.n,
            k: w.k,
            q: w.q,
            weights: w
                .counts
                .iter()
                .map(|(&j, c)| (j.to_string(), c.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<WeightDistributionJson> for WeightDistribution {
    type Error = Error;

    fn try_from(dto: WeightDistributionJson) -> Result<WeightDistribution> {
        let mut counts = BTreeMap::new();
        for (j, c) in dto.weights {
            let w: usize = j
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad weight key {j}")))?;
            let count: BigUint = c
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad count {c}")))?;
            counts.insert(w, count);
        }
        Ok(WeightDistribution {
            n: dto.n,
            k: dto.k,
            q: dto.q,
            counts,
        })
    }
}

/// Exhaustive weight distribution by trace enumeration.
pub fn weight_distribution(ctx: &FieldContext, spec: &CodeSpec) -> WeightDistribution {
    let total = message_count(ctx, spec);
    let counts = (0..total)
        .into_par_iter()
        .fold(BTreeMap::<usize, u64>::new, |mut acc, idx| {
            let w = trace_codeword(ctx, spec, &message_elements(ctx, spec, idx)).weight();
            *acc.entry(w).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_counts);
    WeightDistribution::from_counts(spec.n, spec.k, ctx.q(), counts)
}

/// Weight distribution of a four-dimensional family member, through the
/// root count: weight(a,b,c) = n - Z(a,b,c). No codeword is materialized.
pub fn dim4_weight_distribution(
    ctx: &FieldContext,
    e1: i64,
    e2: i64,
    e3: i64,
) -> Result<WeightDistribution> {
    let spec = build_code(ctx, &dim4_family_exponents(ctx, e1, e2, e3))?;
    let n = spec.n;
    let base: Vec<FieldElement> = ctx.base_elements().collect();
    let ext: Vec<FieldElement> = ctx.elements().collect();
    let counts = base
        .par_iter()
        .fold(BTreeMap::<usize, u64>::new, |mut acc, &a| {
            for &b in &base {
                for &c in &ext {
                    let z = charsums::z_count(ctx, &SumParams::new(ctx, (e1, e2, e3), a, b, c));
                    *acc.entry(n - z as usize).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, merge_counts);
    Ok(WeightDistribution::from_counts(n, spec.k, ctx.q(), counts))
}

fn merge_counts(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Complete weight distribution: symbol composition -> codeword count.
/// Compositions are indexed by the symbol order u_0 = 0, u_i = delta^(i-1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompleteWeightDistribution {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub counts: BTreeMap<Vec<u32>, BigUint>,
}

impl CompleteWeightDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Forgets symbol identities: weight j collects compositions with
    /// t_0 = n - j.
    pub fn to_weight_distribution(&self) -> WeightDistribution {
        let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (comp, c) in &self.counts {
            let w = self.n - comp[0] as usize;
            *counts.entry(w).or_insert_with(BigUint::zero) += c;
        }
        WeightDistribution {
            n: self.n,
            k: self.k,
            q: self.q,
            counts,
        }
    }

    /// Terms in canonical display order: by count ascending, then
    /// composition lexicographically ascending.
    pub fn ordered_terms(&self) -> Vec<(&Vec<u32>, &BigUint)> {
        let mut terms: Vec<(&Vec<u32>, &BigUint)> = self.counts.iter().collect();
        terms.sort_by(|x, y| x.1.cmp(y.1).then(x.0.cmp(y.0)));
        terms
    }

    /// Renders "z0^15 + 3z1^5z2^5z3^5 + ..." in canonical term order.
    pub fn cwe_string(&self) -> String {
        let mut parts = vec![];
        for (comp, count) in self.ordered_terms() {
            let mut s = if count.is_one() {
                String::new()
            } else {
                count.to_string()
            };
            for (i, &t) in comp.iter().enumerate() {
                if t == 0 {
                    continue;
                }
                s.push_str(&format!("z{i}"));
                if t > 1 {
                    s.push_str(&format!("^{t}"));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    pub fn to_json(&self, ctx: &FieldContext) -> serde_json::Value {
        let symbols: Vec<String> = (0..self.q as usize)
            .map(|i| ctx.format_element(ctx.symbol(i)))
            .collect();
        let terms: Vec<serde_json::Value> = self
            .ordered_terms()
            .into_iter()
            .map(|(comp, count)| {
                serde_json::json!({
                    "composition": comp,
                    "count": count.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "symbols": symbols,
            "terms": terms,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<CompleteWeightDistribution> {
        let dto: CweJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParameter(format!("bad complete weight data: {e}")))?;
        let mut counts = BTreeMap::new();
        for term in dto.terms {
            let count: BigUint = term
                .count
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad count {}", term.count)))?;
            counts.insert(term.composition, count);
        }
        Ok(CompleteWeightDistribution {
            n: dto.n,
            k: dto.k,
            q: dto.q,
            counts,
        })
    }
}

#[derive(Deserialize)]
struct CweJson {
    n: usize,
    k: usize,
    q: u64,
    #[allow(dead_code)]
    #[serde(default)]
    symbols: Vec<String>,
    terms: Vec<CweTermJson>,
}

#[derive(Deserialize)]
struct CweTermJson {
    composition: Vec<u32>,
    count: String,
}

/// Exhaustive complete weight distribution by trace enumeration.
pub fn complete_weight_distribution(
    ctx: &FieldContext,
    spec: &CodeSpec,
) -> CompleteWeightDistribution {
    let total = message_count(ctx, spec);
    let counts = (0..total)
        .into_par_iter()
        .fold(BTreeMap::<Vec<u32>, u64>::new, |mut acc, idx| {
            let comp =
                trace_codeword(ctx, spec, &message_elements(ctx, spec, idx)).composition(ctx);
            *acc.entry(comp).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    CompleteWeightDistribution {
        n: spec.n,
        k: spec.k,
        q: ctx.q(),
        counts: counts
            .into_iter()
            .map(|(c, v)| (c, BigUint::from(v)))
            .collect(),
    }
}

/// The predicted weight distribution of the four-dimensional family:
/// five nonzero weights with closed-form frequencies.
pub fn dim4_expected_weights(q: u64) -> WeightDistribution {
    let n = (q * q - 1) as usize;
    WeightDistribution::from_counts(
        n,
        4,
        q,
        [
            (0, 1),
            ((q * (q - 1) - 2) as usize, (q - 1) * (q - 1) * (q * q - q - 1)),
            ((q * (q - 1) - 1) as usize, 2 * (q * q - 1) * (q - 1)),
            ((q * (q - 1)) as usize, q * q - 1),
            ((q * q - 2) as usize, (q * q - 1) * (q - 1)),
            (n, 2 * (q - 1)),
        ],
    )
}

/// The predicted weight distribution of the three-dimensional family:
/// three nonzero weights.
pub fn dim3_expected_weights(q: u64) -> WeightDistribution {
    let n = (q * q - 1) as usize;
    WeightDistribution::from_counts(
        n,
        3,
        q,
        [
            (0, 1),
            ((q * (q - 1) - 1) as usize, (q * q - 1) * (q - 1)),
            ((q * (q - 1)) as usize, q * q - 1),
            (n, q - 1),
        ],
    )
}

/// The predicted complete weight distribution of the three-dimensional
/// family, independent of (e2, e3):
/// z_0^n
/// + (q-1) prod_{i>=1} z_i^(q+1)
/// + (q^2-1) z_0^(q-1) prod_{i>=1} z_i^q
/// + (q^2-1) sum_{j>=1} z_0^q z_j prod_{i>=1, i!=j} z_i^(q+1).
pub fn dim3_expected_cwe(q: u64) -> CompleteWeightDistribution {
    let n = (q * q - 1) as usize;
    let qu = q as usize;
    let mut counts: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();

    let mut zero_word = vec![0u32; qu];
    zero_word[0] = n as u32;
    counts.insert(zero_word, BigUint::one());

    let mut full = vec![(q + 1) as u32; qu];
    full[0] = 0;
    counts.insert(full, BigUint::from(q - 1));

    let mut balanced = vec![q as u32; qu];
    balanced[0] = (q - 1) as u32;
    counts.insert(balanced, BigUint::from(q * q - 1));

    for j in 1..qu {
        let mut comp = vec![(q + 1) as u32; qu];
        comp[0] = q as u32;
        comp[j] = 1;
        counts.insert(comp, BigUint::from(q * q - 1));
    }

    CompleteWeightDistribution {
        n,
        k: 3,
        q,
        counts,
    }
}

/// Pascal-triangle binomial coefficients up to row n.
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(n: usize) -> BinomialTable {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![BigUint::one(); i + 1];
            for j in 1..i {
                row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            BigUint::zero()
        } else {
            self.rows[n][k].clone()
        }
    }
}

/// The q-ary Krawtchouk value K_j(i) for length n:
/// sum_s (-1)^s (q-1)^(j-s) C(i, s) C(n-i, j-s).
fn krawtchouk(binom: &BinomialTable, q: u64, n: usize, j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let mut term = BigInt::from(BigUint::from(q - 1).pow((j - s) as u32));
        term *= BigInt::from(binom.get(i, s));
        term *= BigInt::from(binom.get(n - i, j - s));
        if s % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// MacWilliams transform: the exact weight distribution of the dual code.
/// Errors if any transformed count comes out negative or non-integral,
/// which signals an input that is not a valid distribution.
pub fn macwilliams_dual(w: &WeightDistribution) -> Result<WeightDistribution> {
    let n = w.n;
    let binom = BinomialTable::new(n);
    let qk = BigInt::from(w.q).pow(w.k as u32);
    let mut counts = BTreeMap::new();
    for j in 0..=n {
        let mut s = BigInt::zero();
        for (&i, a_i) in &w.counts {
            s += BigInt::from(a_i.clone()) * krawtchouk(&binom, w.q, n, j, i);
        }
        if s.is_negative() || !(&s % &qk).is_zero() {
            return Err(Error::NonIntegralDual(j));
        }
        let a_dual = (s / &qk).to_biguint().unwrap();
        if !a_dual.is_zero() {
            counts.insert(j, a_dual);
        }
    }
    Ok(WeightDistribution {
        n,
        k: n - w.k,
        q: w.q,
        counts,
    })
}

/// Minimum distance of the dual code, straight off its distribution.
pub fn dual_min_distance(w: &WeightDistribution) -> Result<usize> {
    macwilliams_dual(w)?
        .min_nonzero_weight()
        .ok_or_else(|| Error::InvalidParameter("dual code is trivial".into()))
}

/// Closed form for the number of weight-4 words in the dual of a
/// four-dimensional family member, from the first Pless power moments:
/// (q^2-3)(q-1)^2(q-2)^2(q+2)(q+1)/24.
pub fn dual_a4_closed_form(q: u64) -> BigUint {
    let q = BigUint::from(q);
    let one = BigUint::one();
    let num = (&q * &q - 3u32 * &one)
        * (&q - &one)
        * (&q - &one)
        * (&q - 2u32 * &one)
        * (&q - 2u32 * &one)
        * (&q + 2u32 * &one)
        * (&q + &one);
    let (quot, rem) = num.div_rem(&BigUint::from(24u32));
    assert!(rem.is_zero(), "the Pless count is always divisible by 24");
    quot
}

/// Whether the code has a single nonzero weight, and which.
pub fn one_weight_check(ctx: &FieldContext, spec: &CodeSpec) -> (bool, Option<usize>) {
    let w = weight_distribution(ctx, spec);
    let nonzero: Vec<usize> = w.counts.keys().copied().filter(|&j| j > 0).collect();
    (nonzero.len() == 1, nonzero.first().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::ctx;
    use std::collections::HashSet;

    #[test]
    fn build_code_dimensions_and_factorization() {
        let c = ctx(3, 1);
        let spec = build_code(c, &[0, 4, 1]).unwrap();
        assert_eq!(spec.n(), 8);
        assert_eq!(spec.k(), 4);
        assert_eq!(spec.factor_degrees(), &[1, 1, 2]);
        assert_eq!(
            spec.check_poly().mul(spec.generator_poly(), c),
            Polynomial::x_pow_minus_one(8, c)
        );

        let c25 = build_code(c, &[2, 5]).unwrap();
        assert_eq!(c25.k(), 4);
        assert_eq!(c25.factor_degrees(), &[2, 2]);
    }

    #[test]
    fn build_code_rejects_coset_collisions() {
        let c = ctx(3, 1);
        // 1 and 3 lie in the same 3-cyclotomic coset mod 8.
        assert!(matches!(
            build_code(c, &[1, 3]),
            Err(Error::DuplicateCheckPolynomial(1, 3))
        ));
    }

    #[test]
    fn family_constructors_gate_parameters() {
        let c2 = ctx(2, 1);
        assert!(matches!(dim4_code(c2, 0, 1, 1), Err(Error::BinaryField)));
        assert!(matches!(dim3_code(c2, 1, 1), Err(Error::BinaryField)));

        let c3 = ctx(3, 1);
        assert!(matches!(
            dim4_code(c3, 0, 1, 2),
            Err(Error::Inadmissible(_, _))
        ));
        assert!(matches!(
            dim3_code(c3, 1, 2),
            Err(Error::Inadmissible(_, _))
        ));
        assert!(dim4_code(c3, 0, 1, 1).is_ok());
        assert!(dim3_code(c3, 1, 1).is_ok());
    }

    #[test]
    fn trace_and_polynomial_enumerations_agree() {
        let c3 = ctx(3, 1);
        for exps in [vec![0, 4, 1], vec![2, 5], vec![0, 4, 5]] {
            let spec = build_code(c3, &exps).unwrap();
            assert!(equivalence_check(c3, &spec), "exponents {exps:?}");
        }
        let c4 = ctx(2, 2);
        for exps in [vec![5, 1], vec![0, 5, 1]] {
            let spec = build_code(c4, &exps).unwrap();
            assert!(equivalence_check(c4, &spec), "exponents {exps:?}");
        }
    }

    #[test]
    fn trace_code_sets_have_full_size() {
        let c = ctx(3, 1);
        let spec = build_code(c, &[0, 4, 1]).unwrap();
        let words = trace_code_set(c, &spec);
        assert_eq!(words.len(), 81);
        let distinct: HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), 81, "trace form must be injective");
    }

    #[test]
    fn dim4_weights_match_the_closed_form_and_each_other() {
        let c = ctx(3, 1);
        let via_z = dim4_weight_distribution(c, 0, 1, 1).unwrap();
        let spec = dim4_code(c, 0, 1, 1).unwrap();
        let via_words = weight_distribution(c, &spec);
        assert_eq!(via_z, via_words);
        assert_eq!(via_z, dim4_expected_weights(3));
        assert_eq!(
            via_z.enumerator_string(),
            "1 + 20z^4 + 32z^5 + 8z^6 + 16z^7 + 4z^8"
        );

        let c4 = ctx(2, 2);
        let w4 = dim4_weight_distribution(c4, 0, 1, 1).unwrap();
        assert_eq!(w4, dim4_expected_weights(4));
        assert_eq!(
            w4.enumerator_string(),
            "1 + 99z^10 + 90z^11 + 15z^12 + 45z^14 + 6z^15"
        );
    }

    #[test]
    fn expected_distributions_cover_the_whole_space() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            assert_eq!(dim4_expected_weights(q).total(), BigUint::from(q).pow(4));
            assert_eq!(dim3_expected_weights(q).total(), BigUint::from(q).pow(3));
            assert_eq!(dim3_expected_cwe(q).total(), BigUint::from(q).pow(3));
            assert_eq!(
                dim3_expected_cwe(q).to_weight_distribution(),
                dim3_expected_weights(q)
            );
        }
    }

    #[test]
    fn dim3_weights_and_cwe_at_q4() {
        let c = ctx(2, 2);
        let spec = dim3_code(c, 1, 1).unwrap();
        let w = weight_distribution(c, &spec);
        assert_eq!(w, dim3_expected_weights(4));
        assert_eq!(w.enumerator_string(), "1 + 45z^11 + 15z^12 + 3z^15");

        let cwe = complete_weight_distribution(c, &spec);
        assert_eq!(cwe, dim3_expected_cwe(4));
        assert_eq!(
            cwe.cwe_string(),
            "z0^15 + 3z1^5z2^5z3^5 + 15z0^3z1^4z2^4z3^4 + 15z0^4z1z2^5z3^5 \
             + 15z0^4z1^5z2z3^5 + 15z0^4z1^5z2^5z3"
        );
        assert_eq!(cwe.to_weight_distribution(), w);
    }

    #[test]
    fn dim3_cwe_matches_formula_at_q3_and_q5() {
        let c3 = ctx(3, 1);
        let spec3 = dim3_code(c3, 1, 1).unwrap();
        assert_eq!(complete_weight_distribution(c3, &spec3), dim3_expected_cwe(3));

        let c5 = ctx(5, 1);
        let spec5 = dim3_code(c5, 1, 1).unwrap();
        assert_eq!(complete_weight_distribution(c5, &spec5), dim3_expected_cwe(5));
    }

    #[test]
    fn krawtchouk_generating_function() {
        // sum_j K_j(i) z^j = (1 + (q-1)z)^(n-i) (1 - z)^i over the integers.
        let (n, q) = (8usize, 3u64);
        let binom = BinomialTable::new(n);
        for i in 0..=n {
            let mut poly = vec![BigInt::from(1)];
            for _ in 0..n - i {
                poly = poly_mul_int(&poly, &[BigInt::from(1), BigInt::from(q as i64 - 1)]);
            }
            for _ in 0..i {
                poly = poly_mul_int(&poly, &[BigInt::from(1), BigInt::from(-1)]);
            }
            for (j, coeff) in poly.iter().enumerate() {
                assert_eq!(*coeff, krawtchouk(&binom, q, n, j, i), "i={i} j={j}");
            }
        }
    }

    fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn macwilliams_against_brute_force_dual() {
        // All 3^8 vectors orthogonal to C_(0,4,1): the honest dual.
        let c = ctx(3, 1);
        let spec = build_code(c, &[0, 4, 1]).unwrap();
        let words = trace_code_set(c, &spec);
        let n = spec.n();
        let mut dual_words = vec![];
        for idx in 0..3u64.pow(n as u32) {
            let mut digits = idx;
            let v: Vec<FieldElement> = (0..n)
                .map(|_| {
                    let d = digits % 3;
                    digits /= 3;
                    c.from_prime_int(d)
                })
                .collect();
            let orthogonal = words.iter().all(|w| {
                let mut dot = FieldElement::Zero;
                for (&a, &b) in v.iter().zip(&w.0) {
                    dot = c.add(dot, c.mul(a, b));
                }
                dot.is_zero()
            });
            if orthogonal {
                dual_words.push(Codeword(v));
            }
        }
        dual_words.sort();
        assert_eq!(dual_words.len(), 81);

        // The reciprocal-generator route gives the same set.
        assert_eq!(dual_code_set(c, &spec), dual_words);

        // And the transform gives the same distribution.
        let mut brute = BTreeMap::new();
        for w in &dual_words {
            *brute.entry(w.weight()).or_insert(0u64) += 1;
        }
        let expected = WeightDistribution::from_counts(n, 4, 3, brute);
        let transformed = macwilliams_dual(&weight_distribution(c, &spec)).unwrap();
        assert_eq!(transformed, expected);
    }

    #[test]
    fn macwilliams_is_an_involution_here() {
        let c3 = ctx(3, 1);
        let w3 = weight_distribution(c3, &build_code(c3, &[0, 4, 1]).unwrap());
        assert_eq!(macwilliams_dual(&macwilliams_dual(&w3).unwrap()).unwrap(), w3);

        let c4 = ctx(2, 2);
        let w4 = weight_distribution(c4, &dim3_code(c4, 1, 1).unwrap());
        assert_eq!(macwilliams_dual(&macwilliams_dual(&w4).unwrap()).unwrap(), w4);
    }

    #[test]
    fn dual_parameters_at_q4() {
        let c = ctx(2, 2);
        let w = dim4_weight_distribution(c, 0, 1, 1).unwrap();
        let dual = macwilliams_dual(&w).unwrap();
        assert_eq!((dual.n, dual.k), (15, 11));
        assert_eq!(dual.min_nonzero_weight(), Some(4));
        assert_eq!(dual.count(4), dual_a4_closed_form(4));
        assert_eq!(dual.count(4), BigUint::from(585u32));
    }

    #[test]
    fn pless_counts() {
        assert_eq!(dual_a4_closed_form(3), BigUint::from(20u32));
        assert_eq!(dual_a4_closed_form(4), BigUint::from(585u32));
        assert_eq!(dual_a4_closed_form(7), BigUint::from(124200u32));
    }

    #[test]
    fn one_weight_subcodes() {
        let c = ctx(3, 1);
        // h_1 alone: dimension 2, all nonzero words of weight q(q-1) = 6.
        let h1 = build_code(c, &[1]).unwrap();
        assert_eq!(h1.k(), 2);
        assert_eq!(one_weight_check(c, &h1), (true, Some(6)));
        // h_0 alone: dimension 1, full-weight repetition-like words.
        let h0 = build_code(c, &[0]).unwrap();
        assert_eq!(h0.k(), 1);
        assert_eq!(one_weight_check(c, &h0), (true, Some(8)));
        // The four-dimensional code is five-weight, not one-weight.
        let family = dim4_code(c, 0, 1, 1).unwrap();
        assert_eq!(one_weight_check(c, &family).0, false);

        let c4 = ctx(2, 2);
        let h5 = build_code(c4, &[5]).unwrap();
        assert_eq!(h5.k(), 1);
        assert_eq!(one_weight_check(c4, &h5), (true, Some(15)));
    }

    #[test]
    fn codewords_rotate_within_the_code() {
        let c = ctx(3, 1);
        let spec = build_code(c, &[0, 4, 1]).unwrap();
        let words = trace_code_set(c, &spec);
        let set: HashSet<&Codeword> = words.iter().collect();
        for (i, w) in words.iter().enumerate().step_by(7) {
            for by in 1..spec.n() {
                assert!(set.contains(&w.rotated(by)), "word {i} rotated {by}");
            }
        }
    }

    #[test]
    fn weight_distribution_json_round_trip() {
        let c = ctx(2, 2);
        let w = dim4_weight_distribution(c, 0, 1, 1).unwrap();
        let json = w.to_json();
        assert_eq!(WeightDistribution::from_json(&json).unwrap(), w);
        // Counts are decimal strings.
        assert_eq!(json["weights"]["10"], "99");

        let spec = dim3_code(c, 1, 1).unwrap();
        let cwe = complete_weight_distribution(c, &spec);
        let cwe_json = cwe.to_json(c);
        assert_eq!(
            CompleteWeightDistribution::from_json(&cwe_json).unwrap(),
            cwe
        );
        assert_eq!(cwe_json["symbols"][0], "0");
        assert_eq!(cwe_json["symbols"][1], "g^0");
    }

    #[test]
    fn composition_counts_every_position() {
        let c = ctx(2, 2);
        let spec = dim3_code(c, 1, 1).unwrap();
        for idx in [0u64, 1, 17, 63] {
            let w = trace_codeword(c, &spec, &message_elements(c, &spec, idx));
            let comp = w.composition(c);
            assert_eq!(comp.iter().map(|&t| t as usize).sum::<usize>(), spec.n());
            assert_eq!(spec.n() - comp[0] as usize, w.weight());
        }
    }
}
