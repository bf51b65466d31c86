//! Explicit received words with many codewords on the sphere of radius `τ`,
//! packaged as self-checking certificates.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound1_alt_lower, bound1_lower, bound3_lower, ser, CodeParams};
use crate::codes::{crc_theorem8, vector_to_json, GabidulinCode, CODE_GUARD};
use crate::error::{precondition, Error, Result};
use crate::ff::{make_field, Field, FieldElement};
use crate::linpoly::{min_subspace_poly, LinearizedPoly};
use crate::matfq::{grassmannian_enumerate, rank_distance};

/// Most codewords stored in one certificate.
pub const CERTIFICATE_CAP: usize = 1 << 16;

/// Pairwise distances are re-checked on at most this many stored words.
pub const PAIRWISE_CHECK_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Bound1,
    Bound1Alt,
    Bound3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessParams {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    /// Dimension of the Gabidulin code, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub tau: usize,
    /// 1-based index of the codeword used as the received word.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translate: Option<usize>,
    pub modulus: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub kind: WitnessKind,
    pub params: WitnessParams,
    pub field: Field,
    /// Evaluation points of the Gabidulin code, when there is one.
    pub alphas: Option<Vec<FieldElement>>,
    pub received_word: Vec<FieldElement>,
    /// Codewords at rank distance exactly `τ`, at most [`CERTIFICATE_CAP`].
    pub codewords: Vec<Vec<FieldElement>>,
    /// Number of such codewords found (stored or not).
    pub list_size: u64,
    pub claimed_size: BigUint,
    /// Rank-`τ` counts of every coset searched (alternative construction).
    pub coset_counts: Option<Vec<u64>>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub kind: WitnessKind,
    pub params: WitnessParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Vec<u8>>>,
    pub received_word: Vec<Vec<u8>>,
    #[serde(serialize_with = "ser::uint")]
    pub claimed_size: BigUint,
    pub list_size: u64,
    pub truncated: bool,
    pub codewords: Vec<Vec<Vec<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_counts: Option<Vec<u64>>,
    pub verified: bool,
}

impl WitnessCertificate {
    pub fn truncated(&self) -> bool {
        (self.codewords.len() as u64) < self.list_size
    }

    pub fn to_json(&self) -> CertificateJson {
        let f = &self.field;
        CertificateJson {
            kind: self.kind,
            params: self.params.clone(),
            alphas: self.alphas.as_ref().map(|a| vector_to_json(f, a)),
            received_word: vector_to_json(f, &self.received_word),
            claimed_size: self.claimed_size.clone(),
            list_size: self.list_size,
            truncated: self.truncated(),
            codewords: self
                .codewords
                .iter()
                .map(|c| vector_to_json(f, c))
                .collect(),
            coset_counts: self.coset_counts.clone(),
            verified: self.verified,
        }
    }
}

fn params_of(field: &Field, n: usize, d: usize, k: Option<usize>, tau: usize) -> WitnessParams {
    WitnessParams {
        q: field.q(),
        m: field.m(),
        n,
        d,
        k,
        tau,
        translate: None,
        modulus: field.modulus().to_vec(),
    }
}

fn code_params(p: &WitnessParams) -> Result<CodeParams> {
    CodeParams::new(p.q, p.m as u64, p.n as u64, Some(p.d as u64), None)
}

fn finish(mut cert: WitnessCertificate) -> WitnessCertificate {
    cert.verified = verify(&cert).is_ok();
    cert
}

/// Pigeonhole witness for `Gab[n, k]` with `n = m`: subspace polynomials of
/// q-degree `n − τ` sharing their coefficients of q-degree `k, …, n−τ−1`
/// differ by messages, so their evaluations form a list around one word.
pub fn bound1_witness(code: &GabidulinCode, tau: usize) -> Result<WitnessCertificate> {
    let field = code.field();
    let (n, k, d) = (code.n(), code.k(), code.d());
    if n != field.m() {
        return Err(Error::Unsupported(format!(
            "the subspace-polynomial witness needs n = m, got n = {n}, m = {}",
            field.m()
        )));
    }
    if tau >= d {
        return precondition(format!("radius τ = {tau} must be below d = {d}"));
    }
    let subspaces = grassmannian_enumerate(n, n - tau, field.base())?;
    let polys = subspaces
        .par_iter()
        .map(|u| min_subspace_poly(field, u))
        .collect::<Result<Vec<_>>>()?;

    let mut buckets: BTreeMap<Vec<FieldElement>, Vec<LinearizedPoly>> = BTreeMap::new();
    for p in polys {
        let key = (k..n - tau).map(|i| p.coeff(i)).collect();
        buckets.entry(key).or_default().push(p);
    }
    // BTreeMap order makes the first maximum the lexicographically smallest key
    let mut best: Option<Vec<LinearizedPoly>> = None;
    for bucket in buckets.into_values() {
        if best.as_ref().is_none_or(|b| bucket.len() > b.len()) {
            best = Some(bucket);
        }
    }
    let mut bucket = best.expect("Grassmannian is nonempty");
    bucket.sort();
    let rep = &bucket[0];

    let alphas = code.alphas();
    let received_word = rep.evaluate_all(field, alphas);
    let codewords: Vec<_> = bucket
        .iter()
        .map(|g| code.encode(&rep.sub(field, g)))
        .collect::<Result<_>>()?;
    let list_size = codewords.len() as u64;

    let params = params_of(field, n, d, Some(k), tau);
    let claimed_size = bound1_lower(&code_params(&params)?, tau as u64)?.guarantee;
    Ok(finish(WitnessCertificate {
        kind: WitnessKind::Bound1,
        params,
        field: field.clone(),
        alphas: Some(alphas.to_vec()),
        received_word,
        codewords: codewords.into_iter().take(CERTIFICATE_CAP).collect(),
        list_size,
        claimed_size,
        coset_counts: None,
        verified: false,
    }))
}

/// Direct-sum witness: `C = Gab[n, n−d+1]` at `α_i`, `B = Gab[n, d−τ]` at
/// `α_i^{[n−d+1]}`; the coset `b + C` with the most rank-`τ` words gives the
/// received word `b`.
pub fn bound1_alt_witness(field: &Field, d: usize, tau: usize) -> Result<WitnessCertificate> {
    let n = field.m();
    if tau >= d || d > n {
        return precondition(format!("needs τ < d ≤ n, got τ = {tau}, d = {d}, n = {n}"));
    }
    let code = GabidulinCode::new(field, n, n - d + 1)?;
    let shifted: Vec<_> = code
        .alphas()
        .iter()
        .map(|&a| field.frobenius(a, (n - d + 1) as i64))
        .collect();
    let translates = GabidulinCode::with_points(field, d - tau, shifted)?;
    let (c_size, b_size) = match (code.size(), translates.size()) {
        (Some(c), Some(b)) if c.checked_mul(b).is_some_and(|t| t <= 1 << 28) => (c, b),
        _ => {
            return Err(Error::GuardExceeded {
                what: "coset search",
                needed: format!("{}^{}", field.order(), n - tau + 1),
                limit: 1 << 28,
            })
        }
    };
    debug_assert!(c_size <= CODE_GUARD);
    let words = code.codewords()?;
    let coset_counts: Vec<u64> = (0..b_size)
        .into_par_iter()
        .map(|i| {
            let b = translates.codeword(i).expect("index in range");
            words
                .iter()
                .filter(|c| rank_distance(field, &b, c) == tau)
                .count() as u64
        })
        .collect();
    // first maximum is the smallest message index
    let (best, _) = coset_counts
        .iter()
        .enumerate()
        .fold((0, 0), |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc });
    let received_word = translates.codeword(best as u64)?;
    let list: Vec<_> = words
        .into_iter()
        .filter(|c| rank_distance(field, &received_word, c) == tau)
        .collect();
    let list_size = list.len() as u64;

    let params = params_of(field, n, d, Some(n - d + 1), tau);
    let claimed_size = bound1_alt_lower(&code_params(&params)?, tau as u64)?.guarantee;
    Ok(finish(WitnessCertificate {
        kind: WitnessKind::Bound1Alt,
        params,
        field: field.clone(),
        alphas: Some(code.alphas().to_vec()),
        received_word,
        codewords: list.into_iter().take(CERTIFICATE_CAP).collect(),
        list_size,
        claimed_size,
        coset_counts: Some(coset_counts),
        verified: false,
    }))
}

/// Constant-rank code witness: the received word `0` (or `a_j` when a
/// 1-based `translate` index is given) has every word of the constant-rank
/// code (or every `a_j − a_i`) at rank distance exactly `τ`.
pub fn bound3_witness(
    n: usize,
    m: usize,
    tau: usize,
    d: usize,
    q: u64,
    translate: Option<usize>,
) -> Result<WitnessCertificate> {
    let crc = crc_theorem8(n, m, tau, d, q)?;
    let field = crc.field().clone();
    let words = crc.into_words();
    let (received_word, codewords) = match translate {
        None => (vec![FieldElement::ZERO; n], words),
        Some(j) => {
            if j == 0 || j > words.len() {
                return precondition(format!("translate index {j} outside 1..={}", words.len()));
            }
            let r = words[j - 1].clone();
            let diffs = words
                .iter()
                .map(|a| r.iter().zip(a).map(|(&x, &y)| field.sub(x, y)).collect())
                .collect();
            (r, diffs)
        }
    };
    let list_size = codewords.len() as u64;
    let mut params = params_of(&field, n, d, None, tau);
    params.translate = translate;
    let claimed_size = bound3_lower(&code_params(&params)?, tau as u64)?;
    Ok(finish(WitnessCertificate {
        kind: WitnessKind::Bound3,
        params,
        field,
        alphas: None,
        received_word,
        codewords: codewords.into_iter().take(CERTIFICATE_CAP).collect(),
        list_size,
        claimed_size,
        coset_counts: None,
        verified: false,
    }))
}

type Membership = Box<dyn Fn(&[FieldElement]) -> bool>;

/// Re-checks a certificate from its parameters alone: the code is rebuilt,
/// every stored word is checked for membership and for rank distance
/// exactly `τ` from the received word, stored words are distinct and
/// pairwise at distance `≥ d`, and the claimed size is recomputed and met.
pub fn verify(cert: &WitnessCertificate) -> Result<()> {
    let p = &cert.params;
    let fail = |msg: String| Err(Error::Precondition(format!("certificate rejected: {msg}")));
    let field = make_field(p.q, p.m, Some(&p.modulus))?;
    if field != cert.field {
        return fail("field does not match the parameters".into());
    }
    let n = p.n;
    if cert.received_word.len() != n || cert.codewords.iter().any(|c| c.len() != n) {
        return fail("word length differs from n".into());
    }
    let expected_stored = (cert.list_size as usize).min(CERTIFICATE_CAP);
    if cert.codewords.len() != expected_stored {
        return fail(format!(
            "{} stored words for a list of {}",
            cert.codewords.len(),
            cert.list_size
        ));
    }

    let cp = code_params(p)?;
    let claimed = match cert.kind {
        WitnessKind::Bound1 => bound1_lower(&cp, p.tau as u64)?.guarantee,
        WitnessKind::Bound1Alt => bound1_alt_lower(&cp, p.tau as u64)?.guarantee,
        WitnessKind::Bound3 => bound3_lower(&cp, p.tau as u64)?,
    };
    if claimed != cert.claimed_size {
        return fail(format!(
            "claimed size {} but the formula gives {claimed}",
            cert.claimed_size
        ));
    }
    if BigUint::from(cert.list_size) < claimed {
        return fail(format!(
            "list of {} is below the claimed {claimed}",
            cert.list_size
        ));
    }

    let member: Membership = match cert.kind {
        WitnessKind::Bound1 | WitnessKind::Bound1Alt => {
            let (Some(k), Some(alphas)) = (p.k, cert.alphas.clone()) else {
                return fail("missing Gabidulin parameters".into());
            };
            let code = GabidulinCode::with_points(&field, k, alphas)?;
            if code.d() != p.d {
                return fail("code dimension and d disagree".into());
            }
            Box::new(move |c| code.contains(c))
        }
        WitnessKind::Bound3 => {
            let crc: HashSet<Vec<FieldElement>> = crc_theorem8(n, p.m, p.tau, p.d, p.q)?
                .into_words()
                .into_iter()
                .collect();
            let r = cert.received_word.clone();
            let f = field.clone();
            match p.translate {
                None => {
                    if r.iter().any(|x| !x.is_zero()) {
                        return fail("received word must be zero".into());
                    }
                    Box::new(move |c| crc.contains(c))
                }
                Some(_) => {
                    if !crc.contains(&r) {
                        return fail("received word is not a code word".into());
                    }
                    Box::new(move |c| {
                        let back: Vec<_> = r.iter().zip(c).map(|(&x, &y)| f.sub(x, y)).collect();
                        crc.contains(&back)
                    })
                }
            }
        }
    };

    let mut seen = HashSet::new();
    for (i, c) in cert.codewords.iter().enumerate() {
        if !seen.insert(c) {
            return fail(format!("codeword {i} repeated"));
        }
        if !member(c) {
            return fail(format!("codeword {i} is not in the code"));
        }
        let dist = rank_distance(&field, &cert.received_word, c);
        if dist != p.tau {
            return fail(format!(
                "codeword {i} is at rank distance {dist}, not {}",
                p.tau
            ));
        }
    }
    let checked = &cert.codewords[..cert.codewords.len().min(PAIRWISE_CHECK_LIMIT)];
    for (i, a) in checked.iter().enumerate() {
        for b in &checked[i + 1..] {
            if rank_distance(&field, a, b) < p.d {
                return fail("two listed codewords are closer than d".into());
            }
        }
    }
    Ok(())
}
