//! Gabidulin codes, lifting, lifted-MRD constant-dimension codes and
//! constant-rank codes built from pairs of them.

use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::ff::{expand_to_matrix, make_field, vector_from_matrix, Field, FieldElement};
use crate::linpoly::LinearizedPoly;
use crate::matfq::{
    rank_distance, rank_of_vector, subspace_distance, MatrixFq, Subspace, SubspaceJson,
};

/// Largest number of codewords materialized in one call.
pub const CODE_GUARD: u64 = 1 << 24;

/// Largest constant-dimension code held as explicit subspaces.
pub const CDC_GUARD: u64 = 1 << 20;

fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

fn guard(
    what: &'static str,
    needed: Option<u64>,
    limit: u64,
    shown: impl FnOnce() -> String,
) -> Result<u64> {
    match needed {
        Some(v) if v <= limit => Ok(v),
        _ => Err(Error::GuardExceeded {
            what,
            needed: shown(),
            limit,
        }),
    }
}

/// Coordinates of each entry, the JSON form of a vector over `F_{q^m}`.
pub fn vector_to_json(field: &Field, x: &[FieldElement]) -> Vec<Vec<u8>> {
    x.iter().map(|&e| field.coeffs(e)).collect()
}

/// Inverse of [`vector_to_json`].
pub fn vector_from_json(field: &Field, json: &[Vec<u8>]) -> Result<Vec<FieldElement>> {
    json.iter().map(|c| field.from_coeffs(c)).collect()
}

/// Rank over `F_{q^m}` of a list of vectors.
fn ext_rank(field: &Field, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][c]).expect("nonzero pivot");
        let pivot: Vec<FieldElement> = rows[rank].iter().map(|&x| field.mul(inv, x)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `Gab[n, k]`: evaluations of linearized polynomials of q-degree `< k` at
/// `F_q`-independent points `α_0, …, α_{n−1}`.
#[derive(Debug, Clone)]
pub struct GabidulinCode {
    field: Field,
    k: usize,
    alphas: Vec<FieldElement>,
    /// Row `i` is `(α_0^{[i]}, …, α_{n−1}^{[i]})`.
    generator: Vec<Vec<FieldElement>>,
}

impl GabidulinCode {
    /// Evaluation points `1, x, …, x^{n−1}`.
    pub fn new(field: &Field, n: usize, k: usize) -> Result<Self> {
        if n > field.m() {
            return precondition(format!("length n = {n} exceeds m = {}", field.m()));
        }
        let alphas = (0..n).map(|i| field.basis_element(i)).collect();
        Self::with_points(field, k, alphas)
    }

    pub fn with_points(field: &Field, k: usize, alphas: Vec<FieldElement>) -> Result<Self> {
        let n = alphas.len();
        if k == 0 || k > n {
            return precondition(format!("dimension k = {k} must lie in 1..=n = {n}"));
        }
        if alphas.iter().any(|&a| !field.contains(a)) {
            return Err(Error::InvalidElement(
                "evaluation point outside the field".into(),
            ));
        }
        if rank_of_vector(field, &alphas) != n {
            return precondition("evaluation points are not F_q-linearly independent");
        }
        let generator = (0..k)
            .map(|i| {
                alphas
                    .iter()
                    .map(|&a| field.frobenius(a, i as i64))
                    .collect()
            })
            .collect();
        Ok(GabidulinCode {
            field: field.clone(),
            k,
            alphas,
            generator,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum rank distance `n − k + 1`.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    /// `q^{mk}` when it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        checked_pow(self.field.order(), self.k as u64)
    }

    pub fn encode(&self, message: &LinearizedPoly) -> Result<Vec<FieldElement>> {
        if message.coeffs().len() > self.k {
            return precondition(format!(
                "message q-degree {} is not below k = {}",
                message.coeffs().len() - 1,
                self.k
            ));
        }
        Ok(self.encode_coeffs(message.coeffs()))
    }

    /// `Σ f_i (α_j^{[i]})_j` for `f_0, …, f_{len−1}`, `len ≤ k`.
    pub fn encode_coeffs(&self, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.n()];
        for (&c, row) in coeffs.iter().zip(&self.generator) {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        out
    }

    /// Message with base-`q^m` digits of `index`, least significant first.
    pub fn message(&self, index: u64) -> Result<LinearizedPoly> {
        let size = self.size();
        if size.is_some_and(|s| index >= s) {
            return precondition(format!("message index {index} out of range"));
        }
        let order = self.field.order();
        let mut rest = index;
        let coeffs = (0..self.k)
            .map(|_| {
                let digit = rest % order;
                rest /= order;
                FieldElement::from_index(digit)
            })
            .collect();
        Ok(LinearizedPoly::new(coeffs))
    }

    pub fn codeword(&self, index: u64) -> Result<Vec<FieldElement>> {
        Ok(self.encode_coeffs(self.message(index)?.coeffs()))
    }

    /// Every codeword in message-index order.
    pub fn codewords(&self) -> Result<Vec<Vec<FieldElement>>> {
        let count = guard("codewords", self.size(), CODE_GUARD, || {
            format!("{}^{}", self.field.order(), self.k)
        })?;
        (0..count).map(|i| self.codeword(i)).collect()
    }

    /// Membership by elimination over `F_{q^m}`.
    pub fn contains(&self, x: &[FieldElement]) -> bool {
        if x.len() != self.n() || x.iter().any(|&a| !self.field.contains(a)) {
            return false;
        }
        let mut rows = self.generator.clone();
        rows.push(x.to_vec());
        ext_rank(&self.field, rows) == self.k
    }
}

/// `Rowspace([I_r | X])`.
pub fn lift(x: &MatrixFq) -> Subspace {
    let id = MatrixFq::identity(x.fq(), x.rows());
    Subspace::from_generators(&id.hstack(x).expect("row counts agree"))
}

/// Constant-dimension code with a recorded minimum subspace distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantDimensionCode {
    ambient: usize,
    dim: usize,
    words: Vec<Subspace>,
    min_distance: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CdcJson {
    pub q: u8,
    pub ambient: usize,
    pub dim: usize,
    pub min_subspace_distance: usize,
    pub size: usize,
    pub words: Vec<SubspaceJson>,
}

impl ConstantDimensionCode {
    pub fn new(
        ambient: usize,
        dim: usize,
        words: Vec<Subspace>,
        min_distance: usize,
    ) -> Result<Self> {
        if let Some(w) = words
            .iter()
            .find(|w| w.ambient() != ambient || w.dim() != dim)
        {
            return Err(Error::DimensionMismatch(format!(
                "word of dimension {} in F_q^{} in a code of dimension {dim} in F_q^{ambient}",
                w.dim(),
                w.ambient()
            )));
        }
        Ok(ConstantDimensionCode {
            ambient,
            dim,
            words,
            min_distance,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Recorded minimum subspace distance.
    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    /// Pairwise minimum; `None` below two words.
    pub fn min_distance_exhaustive(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let d = subspace_distance(u, v).expect("same ambient");
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    pub fn to_json(&self) -> CdcJson {
        CdcJson {
            q: self.words.first().map_or(0, |w| w.fq().q()),
            ambient: self.ambient,
            dim: self.dim,
            min_subspace_distance: self.min_distance,
            size: self.words.len(),
            words: self.words.iter().map(Subspace::to_json).collect(),
        }
    }
}

/// Constant-rank code with a guaranteed lower bound on the minimum rank
/// distance and, when known, a proven upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRankCode {
    field: Field,
    n: usize,
    rank: usize,
    words: Vec<Vec<FieldElement>>,
    min_distance: usize,
    min_distance_upper: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrcJson {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub rank: usize,
    pub min_rank_distance_at_least: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_rank_distance_at_most: Option<usize>,
    pub size: usize,
    pub words: Vec<Vec<Vec<u8>>>,
}

impl ConstantRankCode {
    pub fn new(
        field: &Field,
        n: usize,
        rank: usize,
        words: Vec<Vec<FieldElement>>,
        min_distance: usize,
        min_distance_upper: Option<usize>,
    ) -> Result<Self> {
        if words.iter().any(|w| w.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "every word must have length {n}"
            )));
        }
        Ok(ConstantRankCode {
            field: field.clone(),
            n,
            rank,
            words,
            min_distance,
            min_distance_upper,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[Vec<FieldElement>] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Vec<FieldElement>> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Guaranteed lower bound on the minimum rank distance.
    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    pub fn min_distance_upper(&self) -> Option<usize> {
        self.min_distance_upper
    }

    pub fn min_distance_exhaustive(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let d = rank_distance(&self.field, a, b);
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
        best
    }

    /// Every word has the declared rank and all pairs are at least the
    /// recorded distance apart.
    pub fn verify(&self) -> bool {
        self.words
            .iter()
            .all(|w| rank_of_vector(&self.field, w) == self.rank)
            && self
                .min_distance_exhaustive()
                .is_none_or(|d| d >= self.min_distance)
    }

    pub fn to_json(&self) -> CrcJson {
        CrcJson {
            q: self.field.q(),
            m: self.field.m(),
            n: self.n,
            rank: self.rank,
            min_rank_distance_at_least: self.min_distance,
            min_rank_distance_at_most: self.min_distance_upper,
            size: self.words.len(),
            words: self
                .words
                .iter()
                .map(|w| vector_to_json(&self.field, w))
                .collect(),
        }
    }
}

fn lifted_mrd_words(
    n: usize,
    tau: usize,
    d: usize,
    q: u64,
    limit: Option<u64>,
) -> Result<Vec<Subspace>> {
    let field = make_field(q, n - tau, None)?;
    let code = GabidulinCode::new(&field, tau, tau - d / 2 + 1)?;
    let full = code.size();
    let count = match (full, limit) {
        (Some(s), Some(l)) => s.min(l),
        (None, Some(l)) => l,
        (s, None) => s.unwrap_or(u64::MAX),
    };
    guard(
        "constant-dimension code words",
        Some(count),
        CDC_GUARD,
        String::new,
    )?;
    (0..count)
        .map(|i| {
            Ok(lift(
                &expand_to_matrix(&field, &code.codeword(i)?).transpose(),
            ))
        })
        .collect()
}

fn check_lifted(n: usize, tau: usize, d: usize) -> Result<()> {
    if d < 2 || !d.is_multiple_of(2) {
        return precondition(format!(
            "subspace distance d = {d} must be even and positive"
        ));
    }
    if 2 * tau > n || 2 * tau < d {
        return precondition(format!(
            "lifted MRD code needs n/2 ≥ τ ≥ d/2, got n = {n}, τ = {tau}, d = {d}"
        ));
    }
    Ok(())
}

/// Lifts of the transposed codewords of `Gab[τ, τ−d/2+1]` over
/// `F_{q^{n−τ}}`: `q^{(n−τ)(τ−d/2+1)}` subspaces of dimension `τ` in
/// `F_q^n` at minimum distance `d`.
pub fn lifted_mrd_cdc(n: usize, tau: usize, d: usize, q: u64) -> Result<ConstantDimensionCode> {
    check_lifted(n, tau, d)?;
    ConstantDimensionCode::new(n, tau, lifted_mrd_words(n, tau, d, q, None)?, d)
}

/// Which neighbouring even distance an odd-distance construction targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OddVariant {
    /// Subspace distance `d − 1`.
    Minus,
    /// Subspace distance `d + 1`.
    Plus,
}

impl std::str::FromStr for OddVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(OddVariant::Minus),
            "plus" => Ok(OddVariant::Plus),
            other => Err(Error::Precondition(format!("unknown variant {other:?}"))),
        }
    }
}

fn odd_target(tau: usize, d: usize, variant: OddVariant) -> Result<usize> {
    if d.is_multiple_of(2) {
        return precondition(format!("odd-distance construction needs odd d, got {d}"));
    }
    if tau < (d - 1) / 2 + 1 {
        return precondition(format!(
            "needs τ ≥ (d−1)/2 + 1 = {}, got τ = {tau}",
            (d - 1) / 2 + 1
        ));
    }
    match variant {
        OddVariant::Minus if d == 1 => precondition("variant minus needs d ≥ 3"),
        OddVariant::Minus => Ok(d - 1),
        OddVariant::Plus => Ok(d + 1),
    }
}

/// Lifted MRD code for odd `d`: distance `d − 1` (`minus`) or `d + 1`
/// (`plus`) in the given ambient dimension.
pub fn lifted_mrd_cdc_odd(
    ambient: usize,
    tau: usize,
    d: usize,
    variant: OddVariant,
    q: u64,
) -> Result<ConstantDimensionCode> {
    let target = odd_target(tau, d, variant)?;
    lifted_mrd_cdc(ambient, tau, target, q)
}

/// Pairs the first `min(|M|, |N|)` words of each code as `G_i`, `H_i` and
/// emits `A_i = G_iᵀ H_i` read as vectors over `F_{q^m}`.
pub fn crc_from_cdc_pair(
    big_m: &ConstantDimensionCode,
    big_n: &ConstantDimensionCode,
    field: &Field,
) -> Result<ConstantRankCode> {
    let (m, n, r) = (field.m(), big_n.ambient(), big_m.dim());
    if big_m.ambient() != m {
        return Err(Error::DimensionMismatch(format!(
            "first code lives in F_q^{} but the field has degree m = {m}",
            big_m.ambient()
        )));
    }
    if big_n.dim() != r {
        return Err(Error::DimensionMismatch(format!(
            "codes have dimensions {r} and {}",
            big_n.dim()
        )));
    }
    if n > m {
        return precondition(format!("length n = {n} must not exceed m = {m}"));
    }
    let count = big_m.len().min(big_n.len());
    let words = big_m.words()[..count]
        .iter()
        .zip(&big_n.words()[..count])
        .map(|(u, v)| {
            let a = u.basis().transpose().mul(v.basis())?;
            vector_from_matrix(field, &a)
        })
        .collect::<Result<Vec<_>>>()?;
    let lower = (big_m.min_distance() + big_n.min_distance()) / 2;
    let upper = (big_m.len() == big_n.len())
        .then(|| big_m.min_distance().min(big_n.min_distance()) / 2 + r);
    ConstantRankCode::new(field, n, r, words, lower, upper)
}

fn check_theorem8(n: usize, m: usize, tau: usize, d: usize) -> Result<()> {
    let t0 = (d.max(1) - 1) / 2;
    if !(t0 < tau && tau < d && d <= n && n <= m) {
        return precondition(format!(
            "needs ⌊(d−1)/2⌋ + 1 ≤ τ < d ≤ n ≤ m, got τ = {tau}, d = {d}, n = {n}, m = {m}"
        ));
    }
    if 2 * tau > n {
        return precondition(format!("needs τ ≤ n − τ, got τ = {tau}, n = {n}"));
    }
    Ok(())
}

/// Constant-rank code of length `n` over `F_{q^m}` with rank `τ`, minimum
/// rank distance at least `d` and `q^{(n−τ)(τ−⌊(d−1)/2⌋)}` words.
pub fn crc_theorem8(n: usize, m: usize, tau: usize, d: usize, q: u64) -> Result<ConstantRankCode> {
    check_theorem8(n, m, tau, d)?;
    let (d_m, d_n) = if d.is_multiple_of(2) {
        (d, d)
    } else {
        (d - 1, d + 1)
    };
    let big_n = ConstantDimensionCode::new(n, tau, lifted_mrd_words(n, tau, d_n, q, None)?, d_n)?;
    // only the first |N| words of the larger code are paired
    let big_m = ConstantDimensionCode::new(
        m,
        tau,
        lifted_mrd_words(m, tau, d_m, q, Some(big_n.len() as u64))?,
        d_m,
    )?;
    let field = make_field(q, m, None)?;
    let mut crc = crc_from_cdc_pair(&big_m, &big_n, &field)?;
    // truncating the larger code voids the equal-size upper bound unless
    // both codes were equal to begin with
    if !(d.is_multiple_of(2) && n == m) {
        crc.min_distance_upper = None;
    }
    Ok(crc)
}

/// Lifts `[I_τ | C_i]` of the codewords of `Gab[n−τ, n−τ−d/2+1]` over
/// `F_{q^τ}` read as `τ × (n−τ)` matrices, for radii `τ ≥ n − τ`.
pub fn lift_untransposed_cdc(
    n: usize,
    tau: usize,
    d: usize,
    q: u64,
) -> Result<ConstantDimensionCode> {
    if d < 2 || !d.is_multiple_of(2) {
        return precondition(format!(
            "subspace distance d = {d} must be even and positive"
        ));
    }
    if tau > n || n - tau < d / 2 {
        return precondition(format!(
            "needs τ ≤ n and n − τ ≥ d/2, got n = {n}, τ = {tau}, d = {d}"
        ));
    }
    if n - tau > tau {
        return precondition(format!(
            "codeword length n − τ = {} exceeds the extension degree τ = {tau}",
            n - tau
        ));
    }
    let field = make_field(q, tau, None)?;
    let code = GabidulinCode::new(&field, n - tau, n - tau - d / 2 + 1)?;
    let count = guard(
        "constant-dimension code words",
        code.size(),
        CDC_GUARD,
        || format!("{}^{}", field.order(), code.k()),
    )?;
    let words = (0..count)
        .map(|i| Ok(lift(&expand_to_matrix(&field, &code.codeword(i)?))))
        .collect::<Result<Vec<_>>>()?;
    ConstantDimensionCode::new(n, tau, words, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::gaussian_binomial;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    fn f16() -> Field {
        make_field(2, 4, None).unwrap()
    }

    /// Minimum rank of a nonzero codeword, by brute force.
    fn min_weight(code: &GabidulinCode) -> usize {
        code.codewords()
            .unwrap()
            .iter()
            .skip(1)
            .map(|c| rank_of_vector(code.field(), c))
            .min()
            .unwrap()
    }

    #[test]
    fn encode_examples() {
        let f = f16();
        let code = GabidulinCode::new(&f, 4, 2).unwrap();
        assert_eq!(
            code.encode(&LinearizedPoly::zero()).unwrap(),
            vec![FieldElement::ZERO; 4]
        );
        let c = code.encode(&LinearizedPoly::identity()).unwrap();
        assert_eq!(c, code.alphas());
        assert_eq!(rank_of_vector(&f, &c), 4);
        let too_high = LinearizedPoly::monomial(2, FieldElement::ONE);
        assert!(code.encode(&too_high).is_err());
    }

    #[test]
    fn gab_4_2_exhaustive() {
        let f = f16();
        let code = GabidulinCode::new(&f, 4, 2).unwrap();
        let words = code.codewords().unwrap();
        assert_eq!(words.len(), 256);
        assert_eq!(words.iter().collect::<HashSet<_>>().len(), 256);
        let mut min = usize::MAX;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                min = min.min(rank_distance(&f, a, b));
            }
        }
        assert_eq!(min, 3);
    }

    #[test]
    fn mrd_all_small_parameters() {
        let f = f16();
        for n in 1..=4 {
            for k in 1..=n {
                let code = GabidulinCode::new(&f, n, k).unwrap();
                assert_eq!(min_weight(&code), n - k + 1, "Gab[{n},{k}]");
                // Singleton: M ≤ q^{m(n−d+1)} with equality
                assert_eq!(code.size().unwrap(), 16u64.pow((n - code.d() + 1) as u32));
            }
        }
        let f = make_field(3, 3, None).unwrap();
        let code = GabidulinCode::new(&f, 3, 2).unwrap();
        assert_eq!(min_weight(&code), 2);
    }

    #[test]
    fn minimum_weight_counts() {
        let f = f16();
        for t in 1..=4usize {
            let code = GabidulinCode::new(&f, 4, 4 - t + 1).unwrap();
            let count = code
                .codewords()
                .unwrap()
                .iter()
                .filter(|c| rank_of_vector(&f, c) == t)
                .count() as u64;
            let expect = gaussian_binomial(4, t as u64, 2).unwrap().to_u64().unwrap() * 15;
            assert_eq!(count, expect, "t = {t}");
        }
    }

    #[test]
    fn linearity_and_membership() {
        let f = f16();
        let code = GabidulinCode::new(&f, 4, 2).unwrap();
        let a = code.codeword(37).unwrap();
        let b = code.codeword(200).unwrap();
        let c = f.basis_element(3);
        let combo: Vec<_> = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| f.add(f.mul(c, x), y))
            .collect();
        assert!(code.contains(&combo));
        let mut bad = combo.clone();
        bad[0] = f.add(bad[0], FieldElement::ONE);
        assert!(!code.contains(&bad));
        assert!(!code.contains(&combo[..3]));
        assert!(code.message(256).is_err());
    }

    #[test]
    fn custom_points() {
        let f = f16();
        let alphas: Vec<_> = (0..4).map(|i| f.frobenius(f.basis_element(i), 2)).collect();
        let code = GabidulinCode::with_points(&f, 2, alphas).unwrap();
        assert_eq!(min_weight(&code), 3);
        let dependent = vec![FieldElement::ONE, FieldElement::ONE];
        assert!(GabidulinCode::with_points(&f, 1, dependent).is_err());
        assert!(GabidulinCode::new(&f, 5, 2).is_err());
        assert!(GabidulinCode::new(&f, 4, 0).is_err());
    }

    #[test]
    fn lift_examples() {
        let fq = f16().base();
        let x = MatrixFq::from_rows(fq, &[vec![1]]).unwrap();
        let u = lift(&x);
        assert_eq!(u.dim(), 1);
        assert!(u.contains(&[1, 1]));
        let zero = lift(&MatrixFq::zeros(fq, 2, 2));
        assert_eq!(
            zero.basis().to_rows(),
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
        );
        let y = MatrixFq::from_rows(fq, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_ne!(lift(&y), zero);
    }

    #[test]
    fn lifted_cdc_examples() {
        for (n, tau, d, size) in [(4, 2, 4, 4), (6, 2, 4, 16), (6, 3, 2, 512)] {
            let cdc = lifted_mrd_cdc(n, tau, d, 2).unwrap();
            assert_eq!(cdc.len(), size);
            assert_eq!(cdc.words().iter().collect::<HashSet<_>>().len(), size);
            assert!(cdc.words().iter().all(|w| w.dim() == tau));
            if size <= 16 {
                assert_eq!(cdc.min_distance_exhaustive(), Some(d));
            }
        }
        assert!(lifted_mrd_cdc(4, 3, 4, 2).is_err());
        assert!(lifted_mrd_cdc(4, 2, 3, 2).is_err());
        assert!(lifted_mrd_cdc(6, 1, 4, 2).is_err());
    }

    #[test]
    fn lifted_distance_is_twice_rank_distance() {
        let field = make_field(2, 4, None).unwrap();
        let code = GabidulinCode::new(&field, 2, 1).unwrap();
        let words = code.codewords().unwrap();
        let lifted: Vec<_> = words
            .iter()
            .map(|c| lift(&expand_to_matrix(&field, c).transpose()))
            .collect();
        for i in 0..words.len() {
            for j in 0..words.len() {
                assert_eq!(
                    subspace_distance(&lifted[i], &lifted[j]).unwrap(),
                    2 * rank_distance(&field, &words[i], &words[j])
                );
            }
        }
    }

    #[test]
    fn odd_variants() {
        let plus = lifted_mrd_cdc_odd(6, 2, 3, OddVariant::Plus, 2).unwrap();
        assert_eq!(plus.len(), 16);
        assert_eq!(plus.min_distance_exhaustive(), Some(4));
        let minus = lifted_mrd_cdc_odd(6, 2, 3, OddVariant::Minus, 2).unwrap();
        assert_eq!(minus.len(), 256);
        assert_eq!(minus.min_distance(), 2);
        assert!(lifted_mrd_cdc_odd(6, 1, 3, OddVariant::Plus, 2).is_err());
        assert!(lifted_mrd_cdc_odd(6, 2, 4, OddVariant::Plus, 2).is_err());
        assert_eq!("plus".parse::<OddVariant>().unwrap(), OddVariant::Plus);
    }

    #[test]
    fn pair_construction_equal_sizes() {
        let cdc = lifted_mrd_cdc(4, 2, 4, 2).unwrap();
        let crc = crc_from_cdc_pair(&cdc, &cdc, &f16()).unwrap();
        assert_eq!(crc.len(), 4);
        assert!(crc.verify());
        assert_eq!(crc.min_distance(), 4);
        assert_eq!(crc.min_distance_upper(), Some(4));
        assert_eq!(crc.min_distance_exhaustive(), Some(4));
    }

    #[test]
    fn pair_construction_bounds_hold() {
        let field = make_field(2, 6, None).unwrap();
        for (d_m, d_n) in [(2, 2), (2, 4), (4, 4)] {
            let big_m = lifted_mrd_cdc(6, 2, d_m, 2).unwrap();
            let big_n = lifted_mrd_cdc(6, 2, d_n, 2).unwrap();
            let crc = crc_from_cdc_pair(&big_m, &big_n, &field).unwrap();
            assert_eq!(crc.len(), big_m.len().min(big_n.len()));
            assert!(crc.verify());
            let actual = crc.min_distance_exhaustive().unwrap();
            assert!(actual >= (d_m + d_n) / 2);
            if let Some(upper) = crc.min_distance_upper() {
                assert!(actual <= upper);
            }
        }
    }

    #[test]
    fn pair_construction_edge_cases() {
        let field = make_field(2, 6, None).unwrap();
        let big_m = lifted_mrd_cdc_odd(6, 2, 3, OddVariant::Minus, 2).unwrap();
        let big_n = lifted_mrd_cdc_odd(6, 2, 3, OddVariant::Plus, 2).unwrap();
        assert_eq!(crc_from_cdc_pair(&big_m, &big_n, &field).unwrap().len(), 16);

        let fq = field.base();
        let zero6 = ConstantDimensionCode::new(6, 0, vec![Subspace::zero(fq, 6)], 0).unwrap();
        let zero4 = ConstantDimensionCode::new(4, 0, vec![Subspace::zero(fq, 4)], 0).unwrap();
        let crc = crc_from_cdc_pair(&zero6, &zero4, &field).unwrap();
        assert_eq!(crc.words(), &[vec![FieldElement::ZERO; 4]]);

        let other = lifted_mrd_cdc(6, 3, 2, 2).unwrap();
        assert!(crc_from_cdc_pair(&big_m, &other, &field).is_err());
        assert!(crc_from_cdc_pair(&big_n, &big_m, &f16()).is_err());
    }

    #[test]
    fn theorem8_examples() {
        for d in [3, 4] {
            let crc = crc_theorem8(6, 6, 2, d, 2).unwrap();
            assert_eq!(crc.len(), 16);
            assert!(crc.verify());
            assert!(crc.min_distance_exhaustive().unwrap() >= d);
            assert!(crc
                .words()
                .iter()
                .all(|w| rank_of_vector(crc.field(), w) == 2));
        }
        assert_eq!(
            crc_theorem8(6, 6, 2, 3, 2).unwrap().min_distance_upper(),
            None
        );
        assert!(crc_theorem8(4, 4, 3, 4, 2).is_err());
        assert!(crc_theorem8(6, 5, 2, 3, 2).is_err());
        assert!(crc_theorem8(6, 6, 1, 3, 2).is_err());
    }

    #[test]
    fn theorem8_cardinality_formula() {
        for (n, m, tau, d) in [
            (4, 5, 2, 3),
            (5, 6, 2, 4),
            (6, 7, 3, 4),
            (6, 6, 3, 5),
            (4, 4, 2, 4),
        ] {
            let crc = crc_theorem8(n, m, tau, d, 2).unwrap();
            let t0 = (d - 1) / 2;
            assert_eq!(
                crc.len(),
                1 << ((n - tau) * (tau - t0)),
                "{n} {m} {tau} {d}"
            );
            assert!(crc.verify());
        }
        let crc = crc_theorem8(4, 4, 2, 3, 3).unwrap();
        assert_eq!(crc.len(), 9);
        assert!(crc.verify());
    }

    #[test]
    fn untransposed_examples() {
        let cdc = lift_untransposed_cdc(5, 3, 4, 2).unwrap();
        assert_eq!(cdc.len(), 8);
        assert!(cdc.words().iter().all(|w| w.dim() == 3 && w.ambient() == 5));
        assert_eq!(cdc.min_distance_exhaustive(), Some(4));
        let square = lift_untransposed_cdc(4, 2, 4, 2).unwrap();
        assert_eq!(square.len(), 4);
        assert_eq!(square.min_distance_exhaustive(), Some(4));
        assert!(lift_untransposed_cdc(4, 3, 6, 2).is_err());
    }

    #[test]
    fn json_round_trip_of_vectors() {
        let f = f16();
        let code = GabidulinCode::new(&f, 4, 2).unwrap();
        let c = code.codeword(99).unwrap();
        assert_eq!(vector_from_json(&f, &vector_to_json(&f, &c)).unwrap(), c);
        let cdc = lifted_mrd_cdc(4, 2, 4, 2).unwrap().to_json();
        assert_eq!(cdc.size, 4);
        assert_eq!(cdc.q, 2);
    }
}
