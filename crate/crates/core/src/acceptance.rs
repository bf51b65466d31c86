//! End-to-end acceptance checks with their time limits. Each check returns
//! a one-line summary on success and a description of the first mismatch on
//! failure.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    ball_volume, bound1_alt_lower, bound1_lower, bound2_upper, gaussian_binomial, johnson_radii,
    regions_table, CodeParams,
};
use crate::codes::{crc_from_cdc_pair, lifted_mrd_cdc, GabidulinCode};
use crate::ff::{make_field, Fq};
use crate::linpoly::{min_subspace_poly, root_space};
use crate::matfq::{
    distance_sandwich_check, grassmannian_enumerate, rank_decompose, rank_distance, rank_of_vector,
    recompose, MatrixFq,
};
use crate::oracle::{ball_volume_bruteforce, list_codewords, max_list_size, CodeTable, Search};
use crate::witness::{bound1_alt_witness, bound1_witness, bound3_witness, verify};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8} ms (limit {} ms)  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "gaussian binomial"),
    (2, "ball volume"),
    (3, "rank decomposition"),
    (4, "distance sandwich"),
    (5, "grassmannian"),
    (6, "mrd property"),
    (7, "bound I witness"),
    (8, "bound II sandwich"),
    (9, "bound III witness"),
    (10, "constructions"),
    (11, "alternative witness"),
    (12, "johnson radii"),
];

fn limit(id: u8, jobs: Option<usize>) -> Duration {
    let secs = match id {
        1 | 2 | 12 => 1,
        3 | 4 => 5,
        5 | 7 | 9 | 10 => 10,
        6 | 11 => 30,
        _ => {
            let workers = jobs.unwrap_or_else(rayon::current_num_threads);
            if workers >= 8 {
                60
            } else {
                300
            }
        }
    };
    Duration::from_secs(secs)
}

/// Pascal-type recurrence `[n;r] = [n−1;r−1] + q^r [n−1;r]`.
fn pascal_table(q: u64, max_n: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = Vec::new();
    for n in 0..=max_n {
        let mut row = vec![BigUint::zero(); n + 1];
        row[0] = BigUint::from(1u32);
        row[n] = BigUint::from(1u32);
        for r in 1..n {
            row[r] = &t[n - 1][r - 1] + BigUint::from(q).pow(r as u32) * &t[n - 1][r];
        }
        t.push(row);
    }
    t
}

fn c1() -> Check {
    let g42 = lib(gaussian_binomial(4, 2, 2))?;
    let g63 = lib(gaussian_binomial(6, 3, 2))?;
    ensure!(
        g42 == 35u32.into() && g63 == 1395u32.into(),
        "got {g42} and {g63}"
    );
    for q in [2u64, 3] {
        let pascal = pascal_table(q, 8);
        for n in 0..=8u64 {
            for r in 0..=n {
                let g = lib(gaussian_binomial(n, r, q))?;
                ensure!(
                    g == pascal[n as usize][r as usize],
                    "recurrence differs at [{n};{r}]_{q}"
                );
                let low = BigUint::from(q).pow((r * (n - r)) as u32);
                ensure!(
                    low <= g && g <= &low * 4u32,
                    "sandwich fails at [{n};{r}]_{q}"
                );
            }
        }
    }
    Ok("[4;2]=35, [6;3]=1395, recurrence and sandwich for n ≤ 8, q ∈ {2,3}".into())
}

fn c2() -> Check {
    let mut cases = 0;
    for m in 1..=3u64 {
        for n in 1..=3u64 {
            for tau in 0..=m.min(n) {
                let brute = lib(ball_volume_bruteforce(m, n, 2, tau))?;
                let formula = lib(ball_volume(m, n, 2, tau))?;
                ensure!(
                    BigUint::from(brute) == formula,
                    "({m},{n},2,{tau}): {brute} vs {formula}"
                );
                cases += 1;
            }
        }
    }
    ensure!(
        lib(ball_volume(2, 2, 2, 1))? == 10u32.into(),
        "(2,2,2,1) ≠ 10"
    );
    Ok(format!("{cases} cases match enumeration; (2,2,2,1) = 10"))
}

fn c3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for q in [2u64, 3] {
        let fq = lib(Fq::new(q))?;
        for trial in 0..1000 {
            let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let x = MatrixFq::random(fq, m, n, &mut rng);
            let (g, h) = rank_decompose(&x);
            let r = x.rank();
            ensure!(
                g.rows() == r && h.rows() == r,
                "q={q} trial {trial}: factor sizes"
            );
            ensure!(
                g.rank() == r && h.rank() == r,
                "q={q} trial {trial}: factors not full rank"
            );
            ensure!(lib(recompose(&g, &h))? == x, "q={q} trial {trial}: GᵀH ≠ X");
            ensure!(
                h.rowspace() == x.rowspace(),
                "q={q} trial {trial}: row spaces differ"
            );
            ensure!(
                g.rowspace() == x.colspace(),
                "q={q} trial {trial}: column spaces differ"
            );
        }
    }
    Ok("2000 random matrices up to 6×6 decompose exactly".into())
}

fn c4() -> Check {
    let fq = lib(Fq::new(2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0;
    while pairs < 1000 {
        let x = MatrixFq::random(fq, 4, 4, &mut rng);
        let y = MatrixFq::random(fq, 4, 4, &mut rng);
        if x.rank() != y.rank() {
            continue;
        }
        let s = lib(distance_sandwich_check(&x, &y))?;
        ensure!(s.holds(), "violated on random pair {pairs}: {s:?}");
        pairs += 1;
    }
    let rank_one: Vec<MatrixFq> = (0..16u8)
        .map(|i| {
            let rows = vec![vec![i & 1, (i >> 1) & 1], vec![(i >> 2) & 1, (i >> 3) & 1]];
            MatrixFq::from_rows(fq, &rows).unwrap()
        })
        .filter(|x| x.rank() == 1)
        .collect();
    ensure!(
        rank_one.len() == 9,
        "expected 9 rank-1 2×2 matrices, got {}",
        rank_one.len()
    );
    for x in &rank_one {
        for y in &rank_one {
            let s = lib(distance_sandwich_check(x, y))?;
            ensure!(s.holds(), "violated on rank-1 pair {s:?}");
        }
    }
    Ok("1000 random 4×4 pairs and all 81 rank-1 2×2 pairs".into())
}

fn c5() -> Check {
    let fq = lib(Fq::new(2))?;
    for n in 0..=6usize {
        for r in 0..=n {
            let all = lib(grassmannian_enumerate(n, r, fq))?;
            let g = lib(gaussian_binomial(n as u64, r as u64, 2))?;
            ensure!(
                BigUint::from(all.len()) == g,
                "|Gr({n},{r})| = {} ≠ {g}",
                all.len()
            );
            let distinct: HashSet<_> = all.iter().collect();
            ensure!(distinct.len() == all.len(), "Gr({n},{r}) has repeats");
        }
    }
    let field = lib(make_field(2, 4, None))?;
    let mut polys = HashSet::new();
    for u in lib(grassmannian_enumerate(4, 2, fq))? {
        let p = lib(min_subspace_poly(&field, &u))?;
        ensure!(
            p.is_monic() && p.q_degree() == Some(2),
            "{p:?} not monic of q-degree 2"
        );
        ensure!(
            lib(root_space(&field, &p))? == u,
            "round trip fails for {u:?}"
        );
        polys.insert(p);
    }
    ensure!(polys.len() == 35, "{} distinct polynomials", polys.len());
    Ok("Gr(n,r) sizes for n ≤ 6; 35 distinct subspace polynomials round-trip".into())
}

fn c6() -> Check {
    let field = lib(make_field(2, 4, None))?;
    for n in 1..=4 {
        for k in 1..=n {
            let code = lib(GabidulinCode::new(&field, n, k))?;
            let words = lib(code.codewords())?;
            // linear code: minimum distance is the minimum nonzero weight
            let min = words[1..]
                .iter()
                .map(|c| rank_of_vector(&field, c))
                .min()
                .unwrap_or(usize::MAX);
            if words.len() <= 4096 {
                let mut pairwise = usize::MAX;
                for (i, a) in words.iter().enumerate() {
                    for b in &words[i + 1..] {
                        pairwise = pairwise.min(rank_distance(&field, a, b));
                    }
                }
                ensure!(
                    pairwise == min,
                    "Gab[{n},{k}]: pairwise {pairwise} vs weight {min}"
                );
            }
            ensure!(min == n - k + 1, "Gab[{n},{k}]: distance {min}");
        }
    }
    let mut counts = Vec::new();
    for t in 1..=4usize {
        let code = lib(GabidulinCode::new(&field, 4, 4 - t + 1))?;
        let count = lib(code.codewords())?
            .iter()
            .filter(|c| rank_of_vector(&field, c) == t)
            .count() as u64;
        let expect = lib(gaussian_binomial(4, t as u64, 2))? * 15u32;
        ensure!(
            BigUint::from(count) == expect,
            "t={t}: {count} rank-t words, expected {expect}"
        );
        counts.push(count);
    }
    ensure!(counts[1] == 525, "t=2 count {}", counts[1]);
    Ok(format!("MRD for all k ≤ n ≤ 4; rank-t counts {counts:?}"))
}

fn c7() -> Check {
    let field = lib(make_field(2, 4, None))?;
    let code = lib(GabidulinCode::new(&field, 4, 2))?;
    let cert = lib(bound1_witness(&code, 2))?;
    lib(verify(&cert))?;
    let table = lib(CodeTable::from_gabidulin(&code))?;
    let list = lib(list_codewords(&table, &cert.received_word, 2))?;
    let on_sphere = list.sphere_counts[2];
    let p = lib(CodeParams::new(2, 4, 4, None, Some(2)))?;
    let b1 = lib(bound1_lower(&p, 2))?;
    ensure!(
        b1.exact_ratio == BigRational::from_integer(35.into()),
        "ratio {}",
        b1.exact_ratio
    );
    ensure!(on_sphere >= 35, "only {on_sphere} codewords at distance 2");
    ensure!(
        b1.exp_form == BigRational::from_integer(16.into()),
        "chain value {}",
        b1.exp_form
    );
    ensure!(
        b1.exp_form <= BigRational::from_integer(on_sphere.into()),
        "chain value exceeds the list"
    );
    Ok(format!("|Gab ∩ S_2(r)| = {on_sphere} ≥ 35 ≥ 16"))
}

fn c8(jobs: Option<usize>) -> Check {
    let field = lib(make_field(2, 4, None))?;
    let code = lib(GabidulinCode::new(&field, 4, 2))?;
    let table = lib(CodeTable::from_gabidulin(&code))?;
    let res = lib(max_list_size(&table, 2, Search::Exhaustive, jobs))?;
    let p = lib(CodeParams::new(2, 4, 4, None, Some(2)))?;
    let b2 = lib(bound2_upper(&p, 2))?;
    let tiers = [&b2.anticode_sum, &b2.four_sum, &b2.closed_form];
    ensure!(
        tiers.map(|t| t.to_u64()) == [Some(36), Some(65), Some(65)],
        "tiers {} {} {}",
        tiers[0],
        tiers[1],
        tiers[2]
    );
    ensure!(res.words_scanned == 65536, "scanned {}", res.words_scanned);
    ensure!(
        (35..=36).contains(&res.ell),
        "ℓ = {} outside [35, 36]",
        res.ell
    );
    let check = lib(list_codewords(&table, &res.argmax_word, 2))?;
    ensure!(
        check.len() as u64 == res.ell,
        "argmax list has {} words",
        check.len()
    );
    Ok(format!(
        "ℓ = {} over 65536 words; tiers 36 ≤ 65 ≤ 65",
        res.ell
    ))
}

fn c9() -> Check {
    let plain = lib(bound3_witness(6, 6, 2, 3, 2, None))?;
    let moved = lib(bound3_witness(6, 6, 2, 3, 2, Some(1)))?;
    let field = plain.field.clone();
    for cert in [&plain, &moved] {
        lib(verify(cert))?;
        ensure!(
            cert.list_size == 16 && cert.codewords.len() == 16,
            "{} codewords",
            cert.list_size
        );
        ensure!(
            cert.claimed_size == 16u32.into(),
            "claimed {}",
            cert.claimed_size
        );
        for c in &cert.codewords {
            ensure!(
                rank_distance(&field, &cert.received_word, c) == 2,
                "distance ≠ 2"
            );
        }
        for (i, a) in cert.codewords.iter().enumerate() {
            for b in &cert.codewords[i + 1..] {
                ensure!(rank_distance(&field, a, b) >= 3, "pair closer than 3");
            }
        }
    }
    ensure!(
        plain
            .codewords
            .iter()
            .all(|c| rank_of_vector(&field, c) == 2),
        "a codeword of rank ≠ 2"
    );
    ensure!(
        moved.received_word == plain.codewords[0],
        "translate does not start from a_1"
    );
    Ok("16 rank-2 words, pairwise ≥ 3, 0 excluded; translate by a_1 passes".into())
}

fn c10() -> Check {
    let cdc = lib(lifted_mrd_cdc(6, 2, 4, 2))?;
    ensure!(cdc.len() == 16, "{} subspaces", cdc.len());
    ensure!(
        cdc.min_distance_exhaustive() == Some(4),
        "distance {:?}",
        cdc.min_distance_exhaustive()
    );
    let mut summary = Vec::new();
    for (n, tau, d) in [(4usize, 2usize, 4usize), (6, 2, 4), (6, 3, 2)] {
        let field = lib(make_field(2, n, None))?;
        let big = lib(lifted_mrd_cdc(n, tau, d, 2))?;
        let crc = lib(crc_from_cdc_pair(&big, &big, &field))?;
        let lower = d;
        let upper = d / 2 + tau;
        let words = crc.words();
        let mut min = usize::MAX;
        for (i, a) in words.iter().enumerate() {
            ensure!(rank_of_vector(&field, a) == tau, "word of rank ≠ {tau}");
            for b in &words[i + 1..] {
                let dist = rank_distance(&field, a, b);
                ensure!(dist >= lower, "pair at {dist} below {lower}");
                min = min.min(dist);
            }
        }
        ensure!(min <= upper, "no pair at or below {upper} (min {min})");
        summary.push(format!("n={n}: {lower} ≤ {min} ≤ {upper}"));
    }
    Ok(format!(
        "16 subspaces at distance 4; {}",
        summary.join(", ")
    ))
}

fn c11() -> Check {
    let field = lib(make_field(2, 4, None))?;
    let cert = lib(bound1_alt_witness(&field, 3, 2))?;
    lib(verify(&cert))?;
    let counts = cert.coset_counts.clone().unwrap_or_default();
    let total: u64 = counts.iter().sum();
    ensure!(counts.len() == 16, "{} cosets", counts.len());
    ensure!(total == 525, "total {total}");
    let p = lib(CodeParams::new(2, 4, 4, Some(3), None))?;
    ensure!(
        lib(bound1_alt_lower(&p, 2))?.guarantee == 33u32.into(),
        "guarantee ≠ 33"
    );
    ensure!(cert.list_size >= 33, "best coset has {}", cert.list_size);
    Ok(format!(
        "best coset {} ≥ 33; total 525 over 16 cosets",
        cert.list_size
    ))
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn c12() -> Check {
    let zero = BigRational::zero();
    let p = lib(CodeParams::new(2, 4, 4, Some(3), None))?;
    let j = lib(johnson_radii(&p, &zero))?;
    ensure!(j.threshold == 2, "threshold(4,3) = {}", j.threshold);
    let p = lib(CodeParams::new(2, 9, 9, Some(5), None))?;
    let j = lib(johnson_radii(&p, &zero))?;
    ensure!(j.threshold == 3, "threshold(9,5) = {}", j.threshold);
    ensure!(j.tau_j == Some(3.0), "τ_J(9,5) = {:?}", j.tau_j);
    let delta = BigRational::new(3.into(), 4.into());
    let row = lib(regions_table(&[delta], None))?;
    ensure!(
        (row[0].tau_j - 0.5).abs() <= 1e-12,
        "τ_J/n = {}",
        row[0].tau_j
    );
    Ok("τ_J(4,3) = 2, τ_J(9,5) = 3, δ = 3/4 → 0.5".into())
}

/// Runs criterion `id` (1..=12); `jobs` sets the worker count of the
/// exhaustive scan.
pub fn run_criterion(id: u8, jobs: Option<usize>) -> Option<CriterionOutcome> {
    let name = CRITERIA.iter().find(|c| c.0 == id)?.1;
    let start = Instant::now();
    let result = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(jobs),
        9 => c9(),
        10 => c10(),
        11 => c11(),
        12 => c12(),
        _ => return None,
    };
    let elapsed = start.elapsed();
    let limit = limit(id, jobs);
    let (passed, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    Some(CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    })
}

pub fn run_all(jobs: Option<usize>) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter_map(|&(id, _)| run_criterion(id, jobs))
        .collect()
}
