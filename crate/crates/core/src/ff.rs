//! Finite fields `F_q` (q ∈ {2, 3, 4, 5, 7, 8, 9}) and their extensions `F_{q^m}`.
//!
//! Elements of `F_q` are small integers. For prime `q` they are residues; for
//! `q = 4, 8, 9` they encode a polynomial over the prime field in base `p`
//! (defining polynomials `x²+x+1`, `x³+x+1` and `x²+1` respectively).
//!
//! An element of `F_{q^m}` is its coordinate vector in the polynomial basis
//! `{1, x, ..., x^{m-1}}` of the modulus, packed into one integer
//! `Σ c_i q^i`. The integer order of this packing is the lexicographic order
//! used everywhere a deterministic tie-break is needed.
//!
//! When no modulus is given, the monic irreducible polynomial of degree `m`
//! with the smallest packed value `Σ c_i q^i` is used, so `(2, 4)` gives
//! `x⁴+x+1`, `(2, 8)` gives `x⁸+x⁴+x³+x+1`, `(3, 2)` gives `x²+1`.

use std::fmt;
use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};
use crate::matfq::MatrixFq;

pub const SUPPORTED_Q: [u8; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Fields with at most this many elements get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

struct BaseTables {
    q: u8,
    p: u8,
    add: [[u8; 9]; 9],
    mul: [[u8; 9]; 9],
    neg: [u8; 9],
    inv: [u8; 9],
}

fn build_base(q: u8) -> BaseTables {
    let (p, e, modulus): (u8, u32, &[u8]) = match q {
        2 | 3 | 5 | 7 => (q, 1, &[]),
        4 => (2, 2, &[1, 1, 1]),
        8 => (2, 3, &[1, 1, 0, 1]),
        9 => (3, 2, &[1, 0, 1]),
        _ => unreachable!("unsupported q"),
    };
    let digits = |a: u8| -> Vec<u8> {
        let mut v = Vec::with_capacity(e as usize);
        let mut a = a;
        for _ in 0..e {
            v.push(a % p);
            a /= p;
        }
        v
    };
    let pack = |d: &[u8]| -> u8 { d.iter().rev().fold(0u8, |acc, &c| acc * p + c) };

    let mut t = BaseTables {
        q,
        p,
        add: [[0; 9]; 9],
        mul: [[0; 9]; 9],
        neg: [0; 9],
        inv: [0; 9],
    };
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            t.add[a as usize][b as usize] = pack(&sum);

            let prod = if e == 1 {
                vec![((a as u16 * b as u16) % p as u16) as u8]
            } else {
                // schoolbook product then reduction by the monic modulus
                let mut full = vec![0u8; 2 * e as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        full[i + j] = (full[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..full.len()).rev() {
                    let c = full[deg];
                    if c != 0 {
                        for (k, &mc) in modulus.iter().enumerate() {
                            let idx = deg - e as usize + k;
                            full[idx] = (full[idx] + (p - c) * mc % p) % p;
                        }
                    }
                }
                full.truncate(e as usize);
                full
            };
            t.mul[a as usize][b as usize] = pack(&prod);
        }
        let neg: Vec<u8> = da.iter().map(|x| (p - x) % p).collect();
        t.neg[a as usize] = pack(&neg);
    }
    for a in 1..q {
        t.inv[a as usize] = (1..q)
            .find(|&b| t.mul[a as usize][b as usize] == 1)
            .unwrap();
    }
    t
}

static BASE_FIELDS: LazyLock<Vec<BaseTables>> =
    LazyLock::new(|| SUPPORTED_Q.iter().map(|&q| build_base(q)).collect());

/// Handle to the arithmetic of a base field `F_q`.
#[derive(Clone, Copy)]
pub struct Fq {
    t: &'static BaseTables,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        let idx = SUPPORTED_Q
            .iter()
            .position(|&s| s as u64 == q)
            .ok_or(Error::UnsupportedQ(q))?;
        Ok(Fq {
            t: &BASE_FIELDS[idx],
        })
    }

    pub fn q(self) -> u8 {
        self.t.q
    }

    pub fn characteristic(self) -> u8 {
        self.t.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        self.t.add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        self.t.mul[a as usize][b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.t.inv[a as usize])
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.t.q == other.t.q
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.q)
    }
}

/// Dense polynomials over `F_q`, coefficient lists low degree first.
mod fqpoly {
    use super::Fq;

    pub fn trim(a: &mut Vec<u8>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u8]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn sub(fq: Fq, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = fq.sub(x, y);
        }
        trim(&mut out);
        out
    }

    pub fn mul(fq: Fq, a: &[u8], b: &[u8]) -> Vec<u8> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo nonzero `m`.
    pub fn rem(fq: Fq, a: &[u8], m: &[u8]) -> Vec<u8> {
        let dm = degree(m).expect("division by zero polynomial");
        let lead_inv = fq.inv(m[dm]).unwrap();
        let mut r = a.to_vec();
        trim(&mut r);
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = fq.mul(r[dr], lead_inv);
            let shift = dr - dm;
            for (k, &mc) in m[..=dm].iter().enumerate() {
                r[shift + k] = fq.sub(r[shift + k], fq.mul(c, mc));
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(fq: Fq, a: &[u8], b: &[u8], m: &[u8]) -> Vec<u8> {
        rem(fq, &mul(fq, a, b), m)
    }

    pub fn powmod(fq: Fq, base: &[u8], mut e: u64, m: &[u8]) -> Vec<u8> {
        let mut result = rem(fq, &[1], m);
        let mut b = rem(fq, base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(fq, &result, &b, m);
            }
            b = mulmod(fq, &b, &b, m);
            e >>= 1;
        }
        result
    }

    pub fn gcd(fq: Fq, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(fq, &x, &y);
            x = y;
            y = r;
        }
        x
    }

    fn prime_factors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                out.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Rabin's irreducibility test for a monic polynomial of degree ≥ 1.
    pub fn is_irreducible(fq: Fq, f: &[u8]) -> bool {
        let m = match degree(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if m == 1 {
            return true;
        }
        let q = fq.q() as u64;
        let x = rem(fq, &[0, 1], f);
        // frob[i] = x^{q^i} mod f
        let mut frob = vec![x.clone()];
        for _ in 0..m {
            let next = powmod(fq, frob.last().unwrap(), q, f);
            frob.push(next);
        }
        if frob[m] != x {
            return false;
        }
        prime_factors(m).into_iter().all(|p| {
            let h = sub(fq, &frob[m / p], &x);
            degree(&gcd(fq, &h, f)) == Some(0)
        })
    }
}

/// Smallest monic irreducible polynomial of degree `m` over `F_q` by packed
/// value `Σ c_i q^i`. Coefficients are low degree first and include the leader.
pub fn default_modulus(q: u64, m: usize) -> Result<Vec<u8>> {
    let fq = Fq::new(q)?;
    if m == 0 {
        return Err(Error::InvalidModulus(
            "extension degree must be at least 1".into(),
        ));
    }
    let mut low = vec![0u8; m];
    loop {
        let mut f = low.clone();
        f.push(1);
        if fqpoly::is_irreducible(fq, &f) {
            return Ok(f);
        }
        // base-q counter on the low coefficients
        let mut i = 0;
        loop {
            if i == m {
                unreachable!("irreducible polynomials exist in every degree");
            }
            low[i] += 1;
            if low[i] == q as u8 {
                low[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Element of `F_{q^m}` packed as `Σ c_i q^i` over the polynomial basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_index(index: u64) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

struct Inner {
    base: Fq,
    m: usize,
    modulus: Vec<u8>,
    order: u64,
    qpow: Vec<u64>,
    logs: Option<LogTables>,
}

/// Arithmetic context for `F_{q^m}`. Cheap to clone and immutable.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} mod {:?}",
            self.0.base.q(),
            self.0.m,
            self.0.modulus
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.base == other.0.base && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

/// Builds `F_{q^m}`; `modulus` is low-degree-first and must be monic of
/// degree `m` and irreducible. `None` selects the default modulus.
pub fn make_field(q: u64, m: usize, modulus: Option<&[u8]>) -> Result<Field> {
    Field::new(q, m, modulus)
}

impl Field {
    pub fn new(q: u64, m: usize, modulus: Option<&[u8]>) -> Result<Field> {
        let base = Fq::new(q)?;
        if m == 0 {
            return Err(Error::InvalidModulus(
                "extension degree must be at least 1".into(),
            ));
        }
        let order = q
            .checked_pow(m as u32)
            .ok_or(Error::FieldTooLarge { q, m })?;
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "degree mismatch: expected {} coefficients for degree {m}, got {}",
                        m + 1,
                        f.len()
                    )));
                }
                if f[m] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if let Some(&c) = f.iter().find(|&&c| c as u64 >= q) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {c} is not an element of F_{q}"
                    )));
                }
                if !fqpoly::is_irreducible(base, f) {
                    return Err(Error::ReducibleModulus {
                        q,
                        modulus: f.to_vec(),
                    });
                }
                f.to_vec()
            }
            None => default_modulus(q, m)?,
        };
        let mut qpow = Vec::with_capacity(m + 1);
        let mut acc = 1u64;
        for i in 0..=m {
            qpow.push(acc);
            if i < m {
                acc = acc.saturating_mul(q);
            }
        }
        let mut inner = Inner {
            base,
            m,
            modulus,
            order,
            qpow,
            logs: None,
        };
        if order <= TABLE_LIMIT {
            inner.logs = Some(build_logs(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn base(&self) -> Fq {
        self.0.base
    }

    pub fn q(&self) -> u64 {
        self.0.base.q() as u64
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    /// Number of elements `q^m`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.0.order
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.order).map(FieldElement)
    }

    /// The basis element `x^i` of the polynomial basis.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        assert!(i < self.0.m, "basis index out of range");
        FieldElement(self.0.qpow[i])
    }

    /// Embeds `c ∈ F_q` as a constant.
    pub fn embed(&self, c: u8) -> FieldElement {
        debug_assert!(c < self.0.base.q());
        FieldElement(c as u64)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u8> {
        let q = self.q();
        let mut v = Vec::with_capacity(self.0.m);
        let mut x = a.0;
        for _ in 0..self.0.m {
            v.push((x % q) as u8);
            x /= q;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<FieldElement> {
        if coeffs.len() != self.0.m {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.0.m,
                coeffs.len()
            )));
        }
        let q = self.q();
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= q) {
            return Err(Error::InvalidElement(format!(
                "coordinate {c} not in F_{q}"
            )));
        }
        Ok(self.pack(coeffs))
    }

    fn pack(&self, coeffs: &[u8]) -> FieldElement {
        let q = self.q();
        FieldElement(coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    fn char_two(&self) -> bool {
        self.0.base.characteristic() == 2
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.char_two() {
            return FieldElement(a.0 ^ b.0);
        }
        let fq = self.0.base;
        let q = self.q();
        let (mut x, mut y, mut out) = (a.0, b.0, 0u64);
        for i in 0..self.0.m {
            let s = fq.add((x % q) as u8, (y % q) as u8);
            out += s as u64 * self.0.qpow[i];
            x /= q;
            y /= q;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.char_two() {
            return a;
        }
        let fq = self.0.base;
        let q = self.q();
        let (mut x, mut out) = (a.0, 0u64);
        for i in 0..self.0.m {
            out += fq.neg((x % q) as u8) as u64 * self.0.qpow[i];
            x /= q;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.char_two() {
            return FieldElement(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    /// Multiplies by a base-field scalar.
    pub fn scale(&self, c: u8, a: FieldElement) -> FieldElement {
        match c {
            0 => FieldElement::ZERO,
            1 => a,
            _ => {
                let fq = self.0.base;
                let coeffs: Vec<u8> = self.coeffs(a).into_iter().map(|x| fq.mul(c, x)).collect();
                self.pack(&coeffs)
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.0.logs {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let fq = self.0.base;
        let prod = fqpoly::mulmod(fq, &self.coeffs(a), &self.coeffs(b), &self.0.modulus);
        let mut c = prod;
        c.resize(self.0.m, 0);
        self.pack(&c)
    }

    pub fn pow(&self, a: FieldElement, mut e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.0.logs {
            let n = (self.0.order - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e % n)) % n;
            return FieldElement(t.exp[l as usize]);
        }
        let mut result = FieldElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.0.logs {
            Some(t) => {
                let n = self.0.order - 1;
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[((n - l) % n) as usize])
            }
            None => self.pow(a, (self.0.order - 2) as u128),
        })
    }

    /// `a^{q^i}`; `i` is taken mod `m`.
    pub fn frobenius(&self, a: FieldElement, i: i64) -> FieldElement {
        let i = i.rem_euclid(self.0.m as i64) as usize;
        if i == 0 || a.is_zero() {
            return a;
        }
        match &self.0.logs {
            Some(t) => {
                let n = (self.0.order - 1) as u128;
                let l = (t.log[a.0 as usize] as u128 * self.0.qpow[i] as u128) % n;
                FieldElement(t.exp[l as usize])
            }
            None => {
                let mut x = a;
                for _ in 0..i {
                    x = self.pow(x, self.q() as u128);
                }
                x
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }
}

fn build_logs(inner: &Inner) -> LogTables {
    let order = inner.order;
    let n = order - 1;
    // temporary table-free context for the search
    let tmp = Field(Arc::new(Inner {
        base: inner.base,
        m: inner.m,
        modulus: inner.modulus.clone(),
        order,
        qpow: inner.qpow.clone(),
        logs: None,
    }));
    let factors = {
        let mut out = Vec::new();
        let mut k = n;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                out.push(p);
                while k.is_multiple_of(p) {
                    k /= p;
                }
            }
            p += 1;
        }
        if k > 1 {
            out.push(k);
        }
        out
    };
    let generator = (1..order)
        .map(FieldElement)
        .find(|&g| {
            factors
                .iter()
                .all(|&p| tmp.pow(g, (n / p) as u128) != FieldElement::ONE)
        })
        .expect("multiplicative group is cyclic");
    let mut log = vec![0u32; order as usize];
    let mut exp = vec![0u64; 2 * n as usize];
    let mut x = FieldElement::ONE;
    for i in 0..n as usize {
        exp[i] = x.0;
        exp[i + n as usize] = x.0;
        log[x.0 as usize] = i as u32;
        x = tmp.mul_slow(x, generator);
    }
    LogTables { log, exp }
}

/// `m × n` matrix over `F_q` whose column `j` holds the coordinates of `x_j`.
pub fn expand_to_matrix(field: &Field, x: &[FieldElement]) -> MatrixFq {
    let m = field.m();
    let mut out = MatrixFq::zeros(field.base(), m, x.len());
    for (j, &e) in x.iter().enumerate() {
        for (i, c) in field.coeffs(e).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

/// Inverse of [`expand_to_matrix`].
pub fn vector_from_matrix(field: &Field, mat: &MatrixFq) -> Result<Vec<FieldElement>> {
    if mat.rows() != field.m() || mat.fq() != field.base() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} rows over F_{}, got {} rows over F_{}",
            field.m(),
            field.q(),
            mat.rows(),
            mat.fq().q()
        )));
    }
    Ok((0..mat.cols())
        .map(|j| {
            let col: Vec<u8> = (0..mat.rows()).map(|i| mat.get(i, j)).collect();
            field.pack(&col)
        })
        .collect())
}
