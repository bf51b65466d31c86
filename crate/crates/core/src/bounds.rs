//! Closed-form calculators: Gaussian binomials, rank-metric sphere and ball
//! volumes, the Singleton-like bound, the three list-size bounds with all of
//! their tiers, Johnson radii and the decoding-region table.
//!
//! Everything is exact (`BigUint` / `BigRational`); floats appear only as
//! approximations of square roots, and integer thresholds derived from those
//! roots are decided by exact rational comparison.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{precondition, Error, Result};

fn pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `q^e` for a possibly negative exponent, as an exact rational.
fn pow_signed(q: u64, e: i64) -> BigRational {
    if e >= 0 {
        rat(pow(q, e as u64))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(pow(q, (-e) as u64)))
    }
}

fn ceil_to_uint(r: &BigRational) -> BigUint {
    r.ceil().to_integer().to_biguint().unwrap_or_default()
}

fn floor_to_uint(r: &BigRational) -> BigUint {
    r.floor().to_integer().to_biguint().unwrap_or_default()
}

/// `⌊(d−1)/2⌋`, the unique-decoding radius.
pub fn half_distance(d: u64) -> u64 {
    d.saturating_sub(1) / 2
}

/// Gaussian binomial `[n; r]_q = Π_{i<r} (q^n − q^i)/(q^r − q^i)`.
pub fn gaussian_binomial(n: u64, r: u64, q: u64) -> Result<BigUint> {
    if r > n {
        return precondition(format!("[n; r] needs r ≤ n, got n = {n}, r = {r}"));
    }
    if q < 2 {
        return precondition("q must be at least 2");
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= pow(q, n) - pow(q, i);
        den *= pow(q, r) - pow(q, i);
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

/// Number of `m × n` matrices over `F_q` of rank exactly `tau`.
pub fn sphere_volume(m: u64, n: u64, q: u64, tau: u64) -> Result<BigUint> {
    if tau > m.min(n) {
        return precondition(format!("radius {tau} exceeds min(m, n) = {}", m.min(n)));
    }
    let mut prod = BigUint::one();
    for j in 0..tau {
        prod *= pow(q, n) - pow(q, j);
    }
    Ok(gaussian_binomial(m, tau, q)? * prod)
}

/// Number of `m × n` matrices over `F_q` of rank at most `tau`.
pub fn ball_volume(m: u64, n: u64, q: u64, tau: u64) -> Result<BigUint> {
    if tau > m.min(n) {
        return precondition(format!("radius {tau} exceeds min(m, n) = {}", m.min(n)));
    }
    (0..=tau).map(|i| sphere_volume(m, n, q, i)).sum()
}

/// Parameters of a rank-metric code of length `n ≤ m` over `F_{q^m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: u64,
    pub m: u64,
    pub n: u64,
    pub d: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

impl CodeParams {
    /// `d` and `k` may both be given (then `d = n − k + 1` is checked) or
    /// either one alone.
    pub fn new(q: u64, m: u64, n: u64, d: Option<u64>, k: Option<u64>) -> Result<Self> {
        if q < 2 {
            return precondition("q must be at least 2");
        }
        if n > m {
            return precondition(format!("length n = {n} must not exceed m = {m}"));
        }
        let d = match (d, k) {
            (Some(d), Some(k)) => {
                if k > n || d + k != n + 1 {
                    return precondition(format!("d = {d} and k = {k} violate d = n − k + 1"));
                }
                d
            }
            (Some(d), None) => d,
            (None, Some(k)) => {
                if k == 0 || k > n {
                    return precondition(format!("dimension k = {k} must lie in 1..=n"));
                }
                n - k + 1
            }
            (None, None) => return precondition("one of d or k is required"),
        };
        if d == 0 || d > n {
            return precondition(format!("minimum distance d = {d} must lie in 1..=n"));
        }
        Ok(CodeParams { q, m, n, d, k })
    }

    /// Dimension of an MRD code with these parameters.
    pub fn mrd_dimension(&self) -> u64 {
        self.n - self.d + 1
    }
}

/// `q^{m(n−d+1)}`.
pub fn singleton_max(p: &CodeParams) -> BigUint {
    pow(p.q, p.m * (p.n - p.d + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound1 {
    #[serde(serialize_with = "ser::rational")]
    pub exact_ratio: BigRational,
    /// `⌈exact_ratio⌉`: the pigeonhole bucket is at least this large.
    #[serde(serialize_with = "ser::uint")]
    pub guarantee: BigUint,
    #[serde(serialize_with = "ser::rational")]
    pub exp_form: BigRational,
    #[serde(serialize_with = "ser::opt_rational")]
    pub exp_form_nm: Option<BigRational>,
}

/// Lower bound for Gabidulin codes from counting subspace polynomials.
pub fn bound1_lower(p: &CodeParams, tau: u64) -> Result<Bound1> {
    if tau >= p.d {
        return precondition(format!("radius τ = {tau} must be below d = {}", p.d));
    }
    let (q, m, n, d) = (p.q, p.m, p.n, p.d);
    let k = p.mrd_dimension();
    let count = gaussian_binomial(n, n - tau, q)?;
    let buckets = pow(q, m * (n - tau - k));
    let exact_ratio = BigRational::new(BigInt::from(count), BigInt::from(buckets));
    let exp = (tau * (m + n)) as i64 - (tau * tau) as i64 - (m * d) as i64;
    let exp_form = rat(pow(q, m)) * pow_signed(q, exp);
    let exp_form_nm = (n == m).then(|| {
        let e = (2 * n * tau) as i64 - (tau * tau) as i64 - (n * d) as i64;
        rat(pow(q, n)) * pow_signed(q, e)
    });
    Ok(Bound1 {
        guarantee: ceil_to_uint(&exact_ratio),
        exact_ratio,
        exp_form,
        exp_form_nm,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JohnsonRadii {
    /// `(m+n)/2`.
    #[serde(serialize_with = "ser::rational")]
    pub center: BigRational,
    /// `(m+n)²/4 − m(d−ε)`; `τ_J* = center − sqrt(discriminant)`.
    #[serde(serialize_with = "ser::rational")]
    pub discriminant: BigRational,
    pub tau_j_star: f64,
    /// Smallest integer `τ ≥ τ_J*`, decided exactly.
    pub threshold: u64,
    /// `n − sqrt(n(n−d+ε))`, only when `n = m`.
    pub tau_j: Option<f64>,
}

pub fn johnson_radii(p: &CodeParams, epsilon: &BigRational) -> Result<JohnsonRadii> {
    johnson_radii_raw(p.m, p.n, p.d, epsilon)
}

/// Johnson radii without the `1 ≤ d` restriction of [`CodeParams`].
pub fn johnson_radii_raw(m: u64, n: u64, d: u64, epsilon: &BigRational) -> Result<JohnsonRadii> {
    if epsilon.is_negative() || *epsilon >= BigRational::one() {
        return precondition("ε must lie in [0, 1)");
    }
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let center = int(m + n) / int(2);
    let discriminant = &center * &center - int(m) * (int(d) - epsilon);
    if discriminant.is_negative() {
        return precondition("negative discriminant: no real Johnson radius");
    }
    let to_f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
    let tau_j_star = to_f(&center) - to_f(&discriminant).sqrt();
    // τ ≥ c − √D  ⇔  c − τ ≤ 0  or  D ≥ (c − τ)²
    let threshold = (0..)
        .find(|&t| {
            let gap = &center - int(t);
            !gap.is_positive() || discriminant >= &gap * &gap
        })
        .unwrap();
    let tau_j = (n == m).then(|| {
        let inner = int(n) * (int(n) - int(d) + epsilon);
        n as f64 - to_f(&inner).sqrt()
    });
    Ok(JohnsonRadii {
        center,
        discriminant,
        tau_j_star,
        threshold,
        tau_j,
    })
}

/// Number of rank-`tau` codewords of an MRD code of minimum distance `tau`:
/// `[n; τ]_q (q^m − 1)`.
pub fn mrd_weight_tau(n: u64, m: u64, tau: u64, q: u64) -> Result<BigUint> {
    if tau == 0 || tau > n || n > m {
        return precondition(format!(
            "need 1 ≤ τ ≤ n ≤ m, got τ = {tau}, n = {n}, m = {m}"
        ));
    }
    Ok(gaussian_binomial(n, tau, q)? * (pow(q, m) - 1u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltBound {
    #[serde(serialize_with = "ser::rational")]
    pub ratio: BigRational,
    #[serde(serialize_with = "ser::uint")]
    pub guarantee: BigUint,
}

/// `[n; τ](q^m − 1) / q^{m(d−τ)}` from the direct-sum argument.
pub fn bound1_alt_lower(p: &CodeParams, tau: u64) -> Result<AltBound> {
    if tau > p.d {
        return precondition(format!("radius τ = {tau} exceeds d = {}", p.d));
    }
    let w = mrd_weight_tau(p.n, p.m, tau, p.q)?;
    let ratio = BigRational::new(BigInt::from(w), BigInt::from(pow(p.q, p.m * (p.d - tau))));
    Ok(AltBound {
        guarantee: ceil_to_uint(&ratio),
        ratio,
    })
}

/// Exact anticode ratio `[n; r−δ+1] / [r; r−δ+1]`, `δ = d_S/2`.
pub fn anticode_ratio(n: u64, d_s: u64, r: u64, q: u64) -> Result<BigRational> {
    if !d_s.is_multiple_of(2) || d_s < 2 || d_s > 2 * r || r > n {
        return precondition(format!(
            "anticode bound needs even 2 ≤ d_S ≤ 2r ≤ 2n, got d_S = {d_s}, r = {r}, n = {n}"
        ));
    }
    let a = r - d_s / 2 + 1;
    Ok(BigRational::new(
        BigInt::from(gaussian_binomial(n, a, q)?),
        BigInt::from(gaussian_binomial(r, a, q)?),
    ))
}

/// Upper bound on a constant-dimension code's size (floor of the ratio).
pub fn anticode_bound(n: u64, d_s: u64, r: u64, q: u64) -> Result<BigUint> {
    Ok(floor_to_uint(&anticode_ratio(n, d_s, r, q)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound2 {
    #[serde(serialize_with = "ser::uint")]
    pub anticode_sum: BigUint,
    #[serde(serialize_with = "ser::uint")]
    pub four_sum: BigUint,
    #[serde(serialize_with = "ser::uint")]
    pub closed_form: BigUint,
}

fn check_bound2(p: &CodeParams, tau: u64) -> Result<()> {
    let t0 = half_distance(p.d);
    if tau < t0 || tau >= p.d {
        return precondition(format!(
            "upper bound needs ⌊(d−1)/2⌋ = {t0} ≤ τ < d = {}, got τ = {tau}",
            p.d
        ));
    }
    Ok(())
}

/// Upper bound valid for every code and every received word.
pub fn bound2_upper(p: &CodeParams, tau: u64) -> Result<Bound2> {
    check_bound2(p, tau)?;
    let (q, n, d) = (p.q, p.n, p.d);
    let t0 = half_distance(d);
    let mut anticode_sum = BigUint::one();
    let mut four_sum = BigUint::one();
    for t in t0 + 1..=tau {
        anticode_sum += anticode_bound(n, 2 * (d - t), t, q)?;
        four_sum += pow(q, (2 * t + 1 - d) * (n - t)) * 4u32;
    }
    let closed_form = if tau == t0 {
        BigUint::one()
    } else {
        BigUint::one() + BigUint::from(4 * (tau - t0)) * pow(q, (2 * tau + 1 - d) * (n - t0 - 1))
    };
    Ok(Bound2 {
        anticode_sum,
        four_sum,
        closed_form,
    })
}

/// Same sum as [`bound2_upper`] with the iterated Johnson bound for
/// constant-dimension codes in place of the anticode bound.
pub fn bound2_iterated_johnson(p: &CodeParams, tau: u64) -> Result<BigUint> {
    check_bound2(p, tau)?;
    let (q, n, d) = (p.q, p.n, p.d);
    let mut total = BigUint::one();
    for t in half_distance(d) + 1..=tau {
        let factors = 2 * t + 1 - d;
        let mut v = BigUint::one();
        for i in (0..factors).rev() {
            v = (pow(q, n - i) - 1u32) * v / (pow(q, t - i) - 1u32);
        }
        total += v;
    }
    Ok(total)
}

fn check_bound3_common(p: &CodeParams, tau: u64) -> Result<()> {
    let t0 = half_distance(p.d);
    if tau <= t0 || tau >= p.d {
        return precondition(format!(
            "needs ⌊(d−1)/2⌋ + 1 = {} ≤ τ < d = {}, got τ = {tau}",
            t0 + 1,
            p.d
        ));
    }
    Ok(())
}

/// `q^{(n−τ)(τ−⌊(d−1)/2⌋)}`: list size forced by the constant-rank code
/// construction.
pub fn bound3_lower(p: &CodeParams, tau: u64) -> Result<BigUint> {
    check_bound3_common(p, tau)?;
    if 2 * tau > p.n {
        return precondition(format!("needs τ ≤ n − τ, got τ = {tau}, n = {}", p.n));
    }
    Ok(pow(p.q, (p.n - tau) * (tau - half_distance(p.d))))
}

/// `q^{(n−τ)(2τ−d+1)}` when `τ = d/2` or `m ≥ (n−τ)(2τ−d+1)+τ+1`.
pub fn bound3_refined(p: &CodeParams, tau: u64) -> Result<BigUint> {
    check_bound3_common(p, tau)?;
    let (n, m, d) = (p.n, p.m, p.d);
    if d >= n {
        return precondition(format!("refinement needs d < n, got d = {d}, n = {n}"));
    }
    if 2 * tau > n {
        return precondition(format!("needs τ ≤ n − τ, got τ = {tau}, n = {n}"));
    }
    let exponent = (n - tau) * (2 * tau + 1 - d);
    let half = d % 2 == 0 && 2 * tau == d;
    if !half && m < exponent + tau + 1 {
        return precondition(format!(
            "refinement needs τ = d/2 or m ≥ {} (got m = {m})",
            exponent + tau + 1
        ));
    }
    Ok(pow(p.q, exponent))
}

/// `q^{τ(n−τ−d/2+1)}` for `τ > n − τ` and even `d`.
pub fn bound3_large_tau(p: &CodeParams, tau: u64) -> Result<BigUint> {
    check_bound3_common(p, tau)?;
    let (n, d) = (p.n, p.d);
    if 2 * tau <= n {
        return precondition(format!("needs τ > n − τ, got τ = {tau}, n = {n}"));
    }
    if d % 2 != 0 {
        return precondition("large-radius variant needs even d");
    }
    if n - tau < d / 2 {
        return precondition(format!(
            "needs n − τ ≥ d/2 for the underlying MRD code, got n − τ = {}, d/2 = {}",
            n - tau,
            d / 2
        ));
    }
    Ok(pow(p.q, tau * (n - tau - d / 2 + 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound3 {
    #[serde(serialize_with = "ser::opt_uint")]
    pub standard: Option<BigUint>,
    #[serde(serialize_with = "ser::opt_uint")]
    pub refined: Option<BigUint>,
    #[serde(serialize_with = "ser::opt_uint")]
    pub large_tau: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound2Report {
    #[serde(flatten)]
    pub tiers: Bound2,
    #[serde(serialize_with = "ser::uint")]
    pub iterated_johnson: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub params: CodeParams,
    pub tau: u64,
    #[serde(serialize_with = "ser::uint")]
    pub singleton_max: BigUint,
    #[serde(serialize_with = "ser::opt_uint")]
    pub ball_volume: Option<BigUint>,
    pub bound1: Bound1,
    pub bound1_alt: Option<AltBound>,
    pub johnson: Option<JohnsonRadii>,
    pub epsilon: String,
    pub bound2: Option<Bound2Report>,
    pub bound3: Bound3,
}

/// Every bound that is defined at `(params, tau)`. Fails only when
/// `τ ≥ d`, which no list-size bound admits.
pub fn bounds_report(p: &CodeParams, tau: u64, epsilon: &BigRational) -> Result<BoundsReport> {
    let bound1 = bound1_lower(p, tau)?;
    let bound2 = match bound2_upper(p, tau) {
        Ok(tiers) => Some(Bound2Report {
            iterated_johnson: bound2_iterated_johnson(p, tau)?,
            tiers,
        }),
        Err(_) => None,
    };
    Ok(BoundsReport {
        params: *p,
        tau,
        singleton_max: singleton_max(p),
        ball_volume: ball_volume(p.m, p.n, p.q, tau).ok(),
        bound1,
        bound1_alt: bound1_alt_lower(p, tau).ok(),
        johnson: johnson_radii(p, epsilon).ok(),
        epsilon: epsilon.to_string(),
        bound2,
        bound3: Bound3 {
            standard: bound3_lower(p, tau).ok(),
            refined: bound3_refined(p, tau).ok(),
            large_tau: bound3_large_tau(p, tau).ok(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionRow {
    #[serde(serialize_with = "ser::rational")]
    pub delta: BigRational,
    /// Asymptotic `τ_BMD/n = δ/2`.
    #[serde(serialize_with = "ser::rational")]
    pub tau_bmd: BigRational,
    /// Asymptotic `τ_J/n = 1 − sqrt(1 − δ)`.
    pub tau_j: f64,
    pub finite: Option<FiniteRegion>,
}

/// Values at a finite length `n` with `d = ⌊δn⌋`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteRegion {
    pub n: u64,
    pub d: u64,
    #[serde(serialize_with = "ser::rational")]
    pub tau_bmd: BigRational,
    pub tau_j: f64,
}

pub fn regions_table(grid: &[BigRational], n: Option<u64>) -> Result<Vec<RegionRow>> {
    grid.iter()
        .map(|delta| {
            if delta.is_negative() || *delta > BigRational::one() {
                return precondition(format!("δ = {delta} outside [0, 1]"));
            }
            let one_minus = (BigRational::one() - delta).to_f64().unwrap();
            let finite = n.filter(|&n| n > 0).map(|n| {
                let d = (delta * BigRational::from_integer(BigInt::from(n)))
                    .floor()
                    .to_integer()
                    .to_u64()
                    .unwrap();
                FiniteRegion {
                    n,
                    d,
                    tau_bmd: BigRational::new(half_distance(d).into(), n.into()),
                    tau_j: (n as f64 - ((n * (n - d)) as f64).sqrt()) / n as f64,
                }
            });
            Ok(RegionRow {
                delta: delta.clone(),
                tau_bmd: delta / BigRational::from_integer(2.into()),
                tau_j: 1.0 - one_minus.sqrt(),
                finite,
            })
        })
        .collect()
}

/// `0, step, 2·step, …` up to and including 1 when it is hit exactly.
pub fn regions_grid(step: &BigRational) -> Result<Vec<BigRational>> {
    if !step.is_positive() || *step > BigRational::one() {
        return precondition("grid step must lie in (0, 1]");
    }
    let mut out = Vec::new();
    let mut x = BigRational::zero();
    while x <= BigRational::one() {
        out.push(x.clone());
        x += step;
    }
    Ok(out)
}

/// Parses `"3/4"`, `"0.05"` or `"2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Precondition(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Serializers that keep big numbers exact: integers as decimal strings,
/// rationals as `"a/b"` (or `"a"` when integral).
pub(crate) mod ser {
    use num_bigint::BigUint;
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn opt_uint<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn params(q: u64, m: u64, n: u64, d: u64) -> CodeParams {
        CodeParams::new(q, m, n, Some(d), None).unwrap()
    }

    /// Pascal-type recurrence `[n; r] = [n−1; r−1] + q^r [n−1; r]`, kept
    /// independent of the product formula.
    fn gaussian_pascal(n: u64, r: u64, q: u64) -> BigUint {
        if r == 0 || r == n {
            return BigUint::one();
        }
        if r > n {
            return BigUint::zero();
        }
        gaussian_pascal(n - 1, r - 1, q) + pow(q, r) * gaussian_pascal(n - 1, r, q)
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(5, 0, 2).unwrap(), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), big(35));
        assert_eq!(gaussian_binomial(6, 3, 2).unwrap(), big(1395));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn gaussian_binomial_pascal_symmetry_and_sandwich() {
        for q in [2u64, 3, 4, 5] {
            for n in 0..=8 {
                for k in 0..=n {
                    let g = gaussian_binomial(n, k, q).unwrap();
                    assert_eq!(g, gaussian_pascal(n, k, q));
                    assert_eq!(g, gaussian_binomial(n, n - k, q).unwrap());
                    let low = pow(q, k * (n - k));
                    assert!(low <= g && g <= &low * 4u32, "n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(sphere_volume(3, 3, 2, 0).unwrap(), big(1));
        assert_eq!(ball_volume(3, 3, 2, 0).unwrap(), big(1));
        assert_eq!(sphere_volume(2, 2, 2, 1).unwrap(), big(9));
        assert_eq!(ball_volume(2, 2, 2, 1).unwrap(), big(10));
        assert_eq!(ball_volume(3, 3, 2, 3).unwrap(), big(512));
        assert!(sphere_volume(2, 3, 2, 3).is_err());
        for q in [2u64, 3] {
            for m in 1..=5 {
                for n in 1..=5 {
                    let total: BigUint = (0..=m.min(n))
                        .map(|t| sphere_volume(m, n, q, t).unwrap())
                        .sum();
                    assert_eq!(total, pow(q, m * n));
                }
            }
        }
    }

    #[test]
    fn singleton() {
        assert_eq!(singleton_max(&params(2, 4, 4, 3)), big(256));
        assert_eq!(singleton_max(&params(2, 5, 4, 4)), big(32));
        assert_eq!(singleton_max(&params(3, 3, 3, 1)), pow(3, 9));
    }

    #[test]
    fn code_params_validation() {
        assert!(CodeParams::new(2, 4, 4, Some(3), Some(2)).is_ok());
        assert!(CodeParams::new(2, 4, 4, Some(3), Some(3)).is_err());
        assert!(CodeParams::new(2, 3, 4, Some(3), None).is_err());
        assert!(CodeParams::new(2, 4, 4, None, None).is_err());
        assert_eq!(CodeParams::new(2, 4, 4, None, Some(2)).unwrap().d, 3);
    }

    #[test]
    fn bound1_examples() {
        let p = params(2, 4, 4, 3);
        let b = bound1_lower(&p, 2).unwrap();
        assert_eq!(b.exact_ratio, r(35, 1));
        assert_eq!(b.guarantee, big(35));
        assert_eq!(b.exp_form, r(16, 1));
        assert_eq!(b.exp_form_nm, Some(r(16, 1)));
        let b = bound1_lower(&p, 1).unwrap();
        assert_eq!(b.exact_ratio, r(15, 16));
        assert_eq!(b.guarantee, big(1));
        let b = bound1_lower(&p, 0).unwrap();
        assert_eq!(b.exact_ratio, r(1, 256));
        assert_eq!(b.guarantee, big(1));
        assert!(bound1_lower(&p, 3).is_err());
    }

    #[test]
    fn bound1_chain_holds_everywhere() {
        for q in [2u64, 3] {
            for m in 1..=7 {
                for n in 1..=m {
                    for d in 1..=n {
                        let p = params(q, m, n, d);
                        for tau in 0..d {
                            let b = bound1_lower(&p, tau).unwrap();
                            assert!(b.exact_ratio >= b.exp_form, "{p:?} τ={tau}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn johnson_examples() {
        let zero = BigRational::zero();
        let j = johnson_radii(&params(2, 4, 4, 3), &zero).unwrap();
        assert_eq!(j.threshold, 2);
        assert_eq!(j.tau_j, Some(2.0));
        assert!((j.tau_j_star - 2.0).abs() < 1e-12);
        let j = johnson_radii(&params(2, 9, 9, 5), &zero).unwrap();
        assert_eq!(j.threshold, 3);
        assert_eq!(j.tau_j, Some(3.0));
        let j = johnson_radii_raw(4, 4, 0, &zero).unwrap();
        assert_eq!(j.threshold, 0);
        assert_eq!(j.tau_j, Some(0.0));
        // τ_J* for n < m: (m+n)/2 − sqrt((m+n)²/4 − m d)
        let j = johnson_radii(&params(2, 6, 4, 3), &zero).unwrap();
        assert!((j.tau_j_star - (5.0 - 7f64.sqrt())).abs() < 1e-12);
        assert_eq!(j.threshold, 3);
        assert_eq!(j.tau_j, None);
        assert!(johnson_radii(&params(2, 4, 4, 3), &r(1, 1)).is_err());
        assert!(johnson_radii_raw(1, 1, 5, &zero).is_err());
    }

    #[test]
    fn johnson_threshold_is_exact_at_integer_roots() {
        // n(n−d) a perfect square: threshold equals the radius exactly
        for (n, d, expect) in [
            (4u64, 3u64, 2u64),
            (9, 5, 3),
            (16, 7, 4),
            (8, 8, 8),
            (25, 16, 10),
        ] {
            let j = johnson_radii_raw(n, n, d, &BigRational::zero()).unwrap();
            assert_eq!(j.threshold, expect, "n={n} d={d}");
        }
    }

    #[test]
    fn alt_bound_examples() {
        assert_eq!(mrd_weight_tau(4, 4, 2, 2).unwrap(), big(525));
        let a = bound1_alt_lower(&params(2, 4, 4, 3), 2).unwrap();
        assert_eq!(a.ratio, r(525, 16));
        assert_eq!(a.guarantee, big(33));
        let a = bound1_alt_lower(&params(2, 4, 4, 4), 4).unwrap();
        assert_eq!(a.ratio, rat(mrd_weight_tau(4, 4, 4, 2).unwrap()));
        assert!(mrd_weight_tau(4, 4, 0, 2).is_err());
    }

    #[test]
    fn anticode_examples() {
        assert_eq!(anticode_bound(4, 2, 2, 2).unwrap(), big(35));
        assert_eq!(anticode_bound(6, 4, 2, 2).unwrap(), big(21));
        for n in 2..7 {
            for rr in 1..=n {
                let direct = BigRational::new(
                    gaussian_binomial(n, 1, 2).unwrap().into(),
                    gaussian_binomial(rr, 1, 2).unwrap().into(),
                );
                assert_eq!(anticode_ratio(n, 2 * rr, rr, 2).unwrap(), direct);
            }
        }
        assert!(anticode_bound(4, 3, 2, 2).is_err());
        assert!(anticode_bound(4, 6, 2, 2).is_err());
    }

    #[test]
    fn bound2_examples() {
        let b = bound2_upper(&params(2, 4, 4, 3), 2).unwrap();
        assert_eq!(
            (b.anticode_sum, b.four_sum, b.closed_form),
            (big(36), big(65), big(65))
        );
        let b = bound2_upper(&params(2, 4, 4, 3), 1).unwrap();
        assert_eq!(
            (b.anticode_sum, b.four_sum, b.closed_form),
            (big(1), big(1), big(1))
        );
        let b = bound2_upper(&params(2, 6, 6, 3), 2).unwrap();
        assert_eq!(b.anticode_sum, big(652));
        assert!(bound2_upper(&params(2, 6, 6, 5), 1).is_err());
        assert!(bound2_upper(&params(2, 6, 6, 5), 5).is_err());
    }

    #[test]
    fn bound2_iterated_examples() {
        assert_eq!(
            bound2_iterated_johnson(&params(2, 4, 4, 3), 2).unwrap(),
            big(36)
        );
        assert_eq!(
            bound2_iterated_johnson(&params(2, 4, 4, 3), 1).unwrap(),
            big(1)
        );
        assert_eq!(
            bound2_iterated_johnson(&params(2, 6, 6, 3), 2).unwrap(),
            big(652)
        );
    }

    #[test]
    fn bound2_tiers_ordered() {
        for m in 1..=8 {
            for n in 1..=m {
                for d in 1..=n {
                    let p = params(2, m, n, d);
                    for tau in half_distance(d)..d {
                        let b = bound2_upper(&p, tau).unwrap();
                        assert!(b.anticode_sum <= b.four_sum, "{p:?} τ={tau}");
                        assert!(b.four_sum <= b.closed_form, "{p:?} τ={tau}");
                    }
                }
            }
        }
    }

    #[test]
    fn bound3_examples() {
        assert_eq!(bound3_lower(&params(2, 6, 6, 3), 2).unwrap(), big(16));
        assert_eq!(bound3_refined(&params(2, 6, 6, 4), 2).unwrap(), big(16));
        assert_eq!(bound3_lower(&params(2, 6, 6, 4), 2).unwrap(), big(16));
        assert_eq!(bound3_large_tau(&params(2, 5, 5, 4), 3).unwrap(), big(8));
        assert!(bound3_lower(&params(2, 4, 4, 4), 3).is_err());
        assert!(bound3_lower(&params(2, 6, 6, 3), 1).is_err());
        assert!(bound3_large_tau(&params(2, 6, 6, 3), 2).is_err());
        // odd d, τ ≠ d/2 and m too small for the large-m case
        assert!(bound3_refined(&params(2, 6, 6, 3), 2).is_err());
        // same with large m: (n−τ)(2τ−d+1)+τ+1 = 4·2+3 = 11
        assert_eq!(bound3_refined(&params(2, 11, 6, 3), 2).unwrap(), big(256));
    }

    #[test]
    fn bound3_special_case_and_refinement_order() {
        for m in 2..=9 {
            for n in 2..=m {
                for d in 2..=n {
                    let p = params(2, m, n, d);
                    let tau = half_distance(d) + 1;
                    if tau < d && 2 * tau <= n {
                        assert_eq!(bound3_lower(&p, tau).unwrap(), pow(2, n - tau));
                    }
                    for tau in 0..d {
                        if let (Ok(s), Ok(r)) = (bound3_lower(&p, tau), bound3_refined(&p, tau)) {
                            assert!(r >= s, "{p:?} τ={tau}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn report_requires_tau_below_d() {
        let p = params(2, 4, 4, 3);
        assert!(bounds_report(&p, 9, &BigRational::zero()).is_err());
        let rep = bounds_report(&p, 2, &BigRational::zero()).unwrap();
        assert_eq!(rep.bound1.exact_ratio, r(35, 1));
        assert_eq!(rep.bound2.as_ref().unwrap().tiers.anticode_sum, big(36));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["bound1"]["exact_ratio"], "35");
        assert_eq!(json["bound2"]["anticode_sum"], "36");
        assert_eq!(json["bound2"]["iterated_johnson"], "36");
    }

    #[test]
    fn regions() {
        let grid = vec![r(0, 1), r(3, 4), r(1, 1)];
        let rows = regions_table(&grid, None).unwrap();
        assert_eq!(rows[0].tau_j, 0.0);
        assert_eq!(rows[0].tau_bmd, r(0, 1));
        assert!((rows[1].tau_j - 0.5).abs() < 1e-12);
        assert_eq!(rows[1].tau_bmd, r(3, 8));
        assert_eq!(rows[2].tau_j, 1.0);
        assert!(regions_table(&[r(5, 4)], None).is_err());
        let rows = regions_table(&[r(1, 2)], Some(8)).unwrap();
        let f = rows[0].finite.as_ref().unwrap();
        assert_eq!((f.d, f.tau_bmd.clone()), (4, r(1, 8)));
        assert!((f.tau_j - (8.0 - 32f64.sqrt()) / 8.0).abs() < 1e-12);
        assert_eq!(regions_grid(&r(1, 4)).unwrap().len(), 5);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("0.05").unwrap(), r(1, 20));
        assert_eq!(parse_rational("2").unwrap(), r(2, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
