//! Brute-force ground truth: exact lists, maximum list sizes over all
//! received words and ball volumes by enumeration.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{vector_to_json, ConstantRankCode, GabidulinCode};
use crate::error::{precondition, Error, Result};
use crate::ff::{Field, FieldElement, Fq};
use crate::matfq::{rank_distance, rank_f2, MatrixFq};

/// Largest code scanned by [`list_codewords`].
pub const LIST_GUARD: u64 = 1 << 24;
/// Largest received-word space scanned by exhaustive [`max_list_size`].
pub const EXHAUSTIVE_GUARD: u64 = 1 << 28;
/// Largest matrix space scanned by [`ball_volume_bruteforce`].
pub const BALL_GUARD: u64 = 1 << 24;

/// Explicit codeword table shared read-only by the scans.
#[derive(Debug, Clone)]
pub struct CodeTable {
    field: Field,
    n: usize,
    words: Vec<Vec<FieldElement>>,
    /// Row-major copy of `words` as packed `u64`s, for the `q = 2` path.
    packed: Vec<u64>,
}

impl CodeTable {
    pub fn new(field: &Field, n: usize, words: Vec<Vec<FieldElement>>) -> Result<Self> {
        if words.len() as u64 > LIST_GUARD {
            return Err(Error::GuardExceeded {
                what: "code table",
                needed: words.len().to_string(),
                limit: LIST_GUARD,
            });
        }
        if words.iter().any(|w| w.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "every codeword must have length {n}"
            )));
        }
        let packed = words.iter().flatten().map(|e| e.index()).collect();
        Ok(CodeTable {
            field: field.clone(),
            n,
            words,
            packed,
        })
    }

    /// All codewords in message-index order.
    pub fn from_gabidulin(code: &GabidulinCode) -> Result<Self> {
        if code.size().is_none_or(|s| s > LIST_GUARD) {
            return Err(Error::GuardExceeded {
                what: "code table",
                needed: format!("{}^{}", code.field().order(), code.k()),
                limit: LIST_GUARD,
            });
        }
        Self::new(code.field(), code.n(), code.codewords()?)
    }

    pub fn from_crc(code: &ConstantRankCode) -> Result<Self> {
        Self::new(code.field(), code.n(), code.words().to_vec())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Vec<FieldElement>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Rank distance from `r` to every codeword, in table order.
    fn distances<'a>(&'a self, r: &'a [FieldElement]) -> impl Iterator<Item = usize> + 'a {
        let binary = self.field.q() == 2 && self.n <= 64;
        let n = self.n;
        (0..self.words.len()).map(move |i| {
            if binary {
                let mut buf = [0u64; 64];
                let row = &self.packed[i * n..(i + 1) * n];
                for (b, (&c, x)) in buf.iter_mut().zip(row.iter().zip(r)) {
                    *b = c ^ x.index();
                }
                rank_f2(&mut buf[..n])
            } else {
                rank_distance(&self.field, r, &self.words[i])
            }
        })
    }

    /// Number of codewords within rank distance `tau` of `r`.
    pub fn count_within(&self, r: &[FieldElement], tau: usize) -> u64 {
        self.distances(r).filter(|&d| d <= tau).count() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListResult {
    pub received_word: Vec<FieldElement>,
    pub tau: usize,
    /// Codewords in `B_τ(r)`, in table order.
    pub list: Vec<Vec<FieldElement>>,
    /// Rank distance of each listed codeword.
    pub distances: Vec<usize>,
    /// Entry `t` counts listed codewords at distance exactly `t`.
    pub sphere_counts: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ListJson {
    pub received_word: Vec<Vec<u8>>,
    pub tau: usize,
    pub size: usize,
    pub sphere_counts: Vec<u64>,
    pub list: Vec<Vec<Vec<u8>>>,
}

impl ListResult {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn to_json(&self, field: &Field) -> ListJson {
        ListJson {
            received_word: vector_to_json(field, &self.received_word),
            tau: self.tau,
            size: self.list.len(),
            sphere_counts: self.sphere_counts.clone(),
            list: self.list.iter().map(|c| vector_to_json(field, c)).collect(),
        }
    }
}

/// Every codeword within rank distance `tau` of `r`, by full scan.
pub fn list_codewords(code: &CodeTable, r: &[FieldElement], tau: usize) -> Result<ListResult> {
    if r.len() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "received word has length {}, code has length {}",
            r.len(),
            code.n()
        )));
    }
    if r.iter().any(|&e| !code.field().contains(e)) {
        return Err(Error::InvalidElement(
            "received word entry outside the field".into(),
        ));
    }
    let mut result = ListResult {
        received_word: r.to_vec(),
        tau,
        list: Vec::new(),
        distances: Vec::new(),
        sphere_counts: vec![0; tau + 1],
    };
    for (word, d) in code.words().iter().zip(code.distances(r)) {
        if d <= tau {
            result.list.push(word.clone());
            result.distances.push(d);
            result.sphere_counts[d] += 1;
        }
    }
    Ok(result)
}

/// How received words are chosen by [`max_list_size`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Search {
    /// Every word of `F_{q^m}^n`.
    Exhaustive,
    /// `trials` uniform words drawn from a ChaCha8 stream seeded by `seed`.
    Random { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxListResult {
    /// Exact maximum (exhaustive) or best found (random).
    pub ell: u64,
    /// Lexicographically smallest maximizer (exhaustive) or first best
    /// trial (random).
    pub argmax_word: Vec<FieldElement>,
    pub words_scanned: u64,
}

/// `index`'s base-`q^m` digits with `r_0` most significant, so index order
/// is lexicographic order of the element indices.
pub fn word_from_index(field: &Field, n: usize, mut index: u64) -> Vec<FieldElement> {
    let order = field.order();
    let mut out = vec![FieldElement::ZERO; n];
    for slot in out.iter_mut().rev() {
        *slot = FieldElement::from_index(index % order);
        index /= order;
    }
    out
}

fn better(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    // larger count wins, then the smaller index
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return precondition("jobs must be at least 1");
        }
        builder = builder.num_threads(j);
    }
    builder
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))
}

/// Largest list `|C ∩ B_τ(r)|` over received words `r`. The scan is split
/// into index blocks across `jobs` workers; the reduction is deterministic.
pub fn max_list_size(
    code: &CodeTable,
    tau: usize,
    search: Search,
    jobs: Option<usize>,
) -> Result<MaxListResult> {
    let field = code.field();
    let n = code.n();
    let pool = pool(jobs)?;
    match search {
        Search::Exhaustive => {
            let total = field
                .order()
                .checked_pow(n as u32)
                .filter(|&t| t <= EXHAUSTIVE_GUARD)
                .ok_or_else(|| Error::GuardExceeded {
                    what: "received words",
                    needed: format!("{}^{n}", field.order()),
                    limit: EXHAUSTIVE_GUARD,
                })?;
            let (ell, index) = pool.install(|| {
                (0..total)
                    .into_par_iter()
                    .map(|i| (code.count_within(&word_from_index(field, n, i), tau), i))
                    .reduce(|| (0, u64::MAX), better)
            });
            Ok(MaxListResult {
                ell,
                argmax_word: word_from_index(field, n, index),
                words_scanned: total,
            })
        }
        Search::Random { seed, trials } => {
            if trials == 0 {
                return precondition("random search needs at least one trial");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let order = field.order();
            let words: Vec<Vec<FieldElement>> = (0..trials)
                .map(|_| {
                    (0..n)
                        .map(|_| FieldElement::from_index(rng.gen_range(0..order)))
                        .collect()
                })
                .collect();
            let (ell, index) = pool.install(|| {
                words
                    .par_iter()
                    .enumerate()
                    .map(|(i, w)| (code.count_within(w, tau), i as u64))
                    .reduce(|| (0, u64::MAX), better)
            });
            Ok(MaxListResult {
                ell,
                argmax_word: words[index as usize].clone(),
                words_scanned: trials,
            })
        }
    }
}

/// Max list search that also reports wall time.
pub fn max_list_size_timed(
    code: &CodeTable,
    tau: usize,
    search: Search,
    jobs: Option<usize>,
) -> Result<(MaxListResult, u128)> {
    let start = Instant::now();
    let result = max_list_size(code, tau, search, jobs)?;
    Ok((result, start.elapsed().as_millis()))
}

/// `{r − c}` over the listed codewords at distance exactly `tau`: a
/// constant-rank code of rank `tau` whose distance is at least the source
/// code's `d`.
pub fn list_to_crc(
    field: &Field,
    result: &ListResult,
    tau: usize,
    d: usize,
) -> Result<ConstantRankCode> {
    let words: Vec<_> = result
        .list
        .iter()
        .zip(&result.distances)
        .filter(|(_, &dist)| dist == tau)
        .map(|(c, _)| {
            result
                .received_word
                .iter()
                .zip(c)
                .map(|(&x, &y)| field.sub(x, y))
                .collect()
        })
        .collect();
    if words.is_empty() {
        return precondition(format!("no listed codeword at distance exactly {tau}"));
    }
    ConstantRankCode::new(field, result.received_word.len(), tau, words, d, None)
}

fn matrix_from_index(fq: Fq, m: usize, n: usize, mut index: u64) -> MatrixFq {
    let q = fq.q() as u64;
    let mut out = MatrixFq::zeros(fq, m, n);
    for i in 0..m {
        for j in 0..n {
            out.set(i, j, (index % q) as u8);
            index /= q;
        }
    }
    out
}

fn matrix_space_size(m: u64, n: u64, q: u64) -> Result<u64> {
    u32::try_from(m * n)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .filter(|&t| t <= BALL_GUARD)
        .ok_or_else(|| Error::GuardExceeded {
            what: "matrices",
            needed: format!("{q}^{}", m * n),
            limit: BALL_GUARD,
        })
}

/// Number of `m × n` matrices over `F_q` within rank distance `tau` of
/// `center` (the zero matrix when `None`), by enumeration.
pub fn ball_volume_bruteforce_centered(
    m: u64,
    n: u64,
    q: u64,
    tau: u64,
    center: Option<&MatrixFq>,
) -> Result<u64> {
    let fq = Fq::new(q)?;
    let total = matrix_space_size(m, n, q)?;
    let (mu, nu) = (m as usize, n as usize);
    if let Some(c) = center {
        if c.rows() != mu || c.cols() != nu || c.fq() != fq {
            return Err(Error::DimensionMismatch(
                "center has the wrong shape".into(),
            ));
        }
    }
    let count = (0..total)
        .into_par_iter()
        .filter(|&i| {
            if q == 2 && center.is_none() && nu <= 64 {
                // row i of the matrix is bits i·n .. (i+1)·n of the index
                let mut rows = [0u64; 64];
                let mask = if nu == 64 { u64::MAX } else { (1 << nu) - 1 };
                for (r, row) in rows.iter_mut().enumerate().take(mu.min(64)) {
                    *row = (i >> (r * nu)) & mask;
                }
                return mu <= 64 && rank_f2(&mut rows[..mu]) as u64 <= tau;
            }
            let x = matrix_from_index(fq, mu, nu, i);
            let x = match center {
                Some(c) => x.sub(c).expect("shapes checked"),
                None => x,
            };
            x.rank() as u64 <= tau
        })
        .count();
    Ok(count as u64)
}

/// Number of `m × n` matrices over `F_q` of rank at most `tau`.
pub fn ball_volume_bruteforce(m: u64, n: u64, q: u64, tau: u64) -> Result<u64> {
    ball_volume_bruteforce_centered(m, n, q, tau, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ball_volume;
    use crate::codes::crc_theorem8;
    use crate::ff::make_field;
    use crate::witness::{bound1_witness, bound3_witness};
    use num_bigint::BigUint;

    fn gab(m: usize, n: usize, k: usize) -> (Field, GabidulinCode, CodeTable) {
        let f = make_field(2, m, None).unwrap();
        let code = GabidulinCode::new(&f, n, k).unwrap();
        let table = CodeTable::from_gabidulin(&code).unwrap();
        (f, code, table)
    }

    #[test]
    fn list_examples() {
        let (_, code, table) = gab(4, 4, 2);
        let c = code.codeword(77).unwrap();
        let res = list_codewords(&table, &c, 0).unwrap();
        assert_eq!(res.list, vec![c.clone()]);
        assert_eq!(res.sphere_counts, vec![1]);

        let cert = bound1_witness(&code, 2).unwrap();
        let res = list_codewords(&table, &cert.received_word, 2).unwrap();
        assert!(res.sphere_counts[2] >= 35);
        assert_eq!(res.sphere_counts.iter().sum::<u64>(), res.len() as u64);

        for i in [0u64, 1000, 40000, 65535] {
            let r = word_from_index(table.field(), 4, i);
            assert!(list_codewords(&table, &r, 1).unwrap().len() <= 1);
        }
        assert!(list_codewords(&table, &c[..3], 1).is_err());
    }

    #[test]
    fn unique_decoding_radius() {
        let (_, _, table) = gab(4, 4, 2);
        let res = max_list_size(
            &table,
            1,
            Search::Random {
                seed: 3,
                trials: 500,
            },
            Some(2),
        )
        .unwrap();
        assert_eq!(res.ell, 1);
    }

    #[test]
    fn exhaustive_gab_2_1() {
        let (f, _, table) = gab(2, 2, 1);
        let res = max_list_size(&table, 1, Search::Exhaustive, Some(1)).unwrap();
        // independent count: each word against each codeword
        let mut best = (0, 0);
        for i in 0..16 {
            let r = word_from_index(&f, 2, i);
            let c = table
                .words()
                .iter()
                .filter(|w| crate::matfq::rank_distance(&f, &r, w) <= 1)
                .count();
            if c > best.0 {
                best = (c, i);
            }
        }
        assert_eq!(res.ell, best.0 as u64);
        assert_eq!(res.argmax_word, word_from_index(&f, 2, best.1));
        assert_eq!(res.words_scanned, 16);
    }

    #[test]
    fn exhaustive_is_deterministic_across_jobs() {
        let (_, _, table) = gab(3, 3, 1);
        let one = max_list_size(&table, 2, Search::Exhaustive, Some(1)).unwrap();
        let four = max_list_size(&table, 2, Search::Exhaustive, Some(4)).unwrap();
        assert_eq!(one, four);
        let r1 = max_list_size(
            &table,
            2,
            Search::Random {
                seed: 7,
                trials: 64,
            },
            Some(1),
        )
        .unwrap();
        let r3 = max_list_size(
            &table,
            2,
            Search::Random {
                seed: 7,
                trials: 64,
            },
            Some(3),
        )
        .unwrap();
        assert_eq!(r1, r3);
        assert!(r1.ell <= one.ell);
    }

    #[test]
    fn translation_invariance() {
        let (f, code, table) = gab(3, 3, 1);
        let shift = word_from_index(&f, 3, 300);
        let moved: Vec<Vec<_>> = code
            .codewords()
            .unwrap()
            .iter()
            .map(|c| c.iter().zip(&shift).map(|(&a, &b)| f.add(a, b)).collect())
            .collect();
        let moved = CodeTable::new(&f, 3, moved).unwrap();
        for tau in 0..3 {
            let a = max_list_size(&table, tau, Search::Exhaustive, None).unwrap();
            let b = max_list_size(&moved, tau, Search::Exhaustive, None).unwrap();
            assert_eq!(a.ell, b.ell);
        }
    }

    #[test]
    fn guards() {
        let (_, _, table) = gab(8, 8, 1);
        assert!(matches!(
            max_list_size(&table, 1, Search::Exhaustive, None),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(ball_volume_bruteforce(5, 5, 2, 1).is_err());
        let (_, big, _) = gab(8, 8, 1);
        let huge = GabidulinCode::new(big.field(), 8, 4).unwrap();
        assert!(CodeTable::from_gabidulin(&huge).is_err());
    }

    #[test]
    fn list_to_crc_examples() {
        let (f, code, table) = gab(4, 4, 2);
        let cert = bound1_witness(&code, 2).unwrap();
        let res = list_codewords(&table, &cert.received_word, 2).unwrap();
        let crc = list_to_crc(&f, &res, 2, 3).unwrap();
        assert_eq!(crc.len() as u64, res.sphere_counts[2]);
        assert!(crc.verify());

        let c = code.codeword(5).unwrap();
        let single = list_codewords(&table, &c, 0).unwrap();
        assert_eq!(list_to_crc(&f, &single, 0, 3).unwrap().len(), 1);
        assert!(list_to_crc(&f, &single, 2, 3).is_err());

        let crc8 = crc_theorem8(6, 6, 2, 3, 2).unwrap();
        let wit = bound3_witness(6, 6, 2, 3, 2, None).unwrap();
        let table = CodeTable::new(&wit.field, 6, wit.codewords.clone()).unwrap();
        let res = list_codewords(&table, &wit.received_word, 2).unwrap();
        let back = list_to_crc(crc8.field(), &res, 2, 3).unwrap();
        // r = 0 over F_2, so r − c = c
        assert_eq!(back.words(), crc8.words());
    }

    #[test]
    fn ball_volume_examples() {
        assert_eq!(ball_volume_bruteforce(2, 2, 2, 1).unwrap(), 10);
        assert_eq!(ball_volume_bruteforce(3, 3, 2, 3).unwrap(), 512);
        assert_eq!(ball_volume_bruteforce(2, 2, 2, 0).unwrap(), 1);
    }

    #[test]
    fn ball_volume_matches_formula() {
        for q in [2u64, 3] {
            for m in 1..=3u64 {
                for n in 1..=3u64 {
                    if q == 3 && m * n > 6 {
                        continue;
                    }
                    for tau in 0..=n.min(m) {
                        let brute = ball_volume_bruteforce(m, n, q, tau).unwrap();
                        assert_eq!(BigUint::from(brute), ball_volume(m, n, q, tau).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn ball_volume_center_independent() {
        let fq = Fq::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let c = MatrixFq::random(fq, 3, 3, &mut rng);
            for tau in 0..=3 {
                assert_eq!(
                    ball_volume_bruteforce_centered(3, 3, 2, tau, Some(&c)).unwrap(),
                    ball_volume_bruteforce(3, 3, 2, tau).unwrap()
                );
            }
        }
    }
}
