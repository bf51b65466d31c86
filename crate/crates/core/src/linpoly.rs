//! Linearized polynomials `Σ f_i x^{[i]}` over `F_{q^m}`, where
//! `x^{[i]} = x^{q^i}`.

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::matfq::{MatrixFq, Subspace};

/// Coefficients `f_0, …, f_d` with `f_d ≠ 0`; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity `x = x^{[0]}`.
    pub fn identity() -> Self {
        Self::monomial(0, FieldElement::ONE)
    }

    /// `c · x^{[i]}`.
    pub fn monomial(i: usize, c: FieldElement) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^{[i]}` (zero past the end).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn add(&self, field: &Field, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    /// `c · f(x)`.
    pub fn scale(&self, field: &Field, c: FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|&f| field.mul(c, f)).collect())
    }

    /// `f(a) = Σ f_i a^{q^i}`, accumulating Frobenius powers of `a`.
    pub fn evaluate(&self, field: &Field, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = a;
        for (i, &f) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = field.frobenius(power, 1);
            }
            acc = field.add(acc, field.mul(f, power));
        }
        acc
    }

    /// `(f(a_0), …, f(a_{n−1}))`.
    pub fn evaluate_all(&self, field: &Field, points: &[FieldElement]) -> Vec<FieldElement> {
        points.iter().map(|&a| self.evaluate(field, a)).collect()
    }

    /// Coordinate array of each coefficient, index `i` for `x^{[i]}`.
    pub fn to_json(&self, field: &Field) -> Vec<Vec<u8>> {
        self.coeffs.iter().map(|&c| field.coeffs(c)).collect()
    }

    pub fn from_json(field: &Field, json: &[Vec<u8>]) -> Result<Self> {
        Ok(Self::new(
            json.iter()
                .map(|c| field.from_coeffs(c))
                .collect::<Result<_>>()?,
        ))
    }

    /// `x^{[1]} ∘ f`, i.e. `f(x)^q`.
    fn frobenius_shift(&self, field: &Field) -> Self {
        let mut coeffs = vec![FieldElement::ZERO];
        coeffs.extend(self.coeffs.iter().map(|&c| field.frobenius(c, 1)));
        Self::new(coeffs)
    }
}

/// Composition `f(g(x)) = Σ_{i,j} f_i g_j^{[i]} x^{[i+j]}`.
pub fn symbolic_product(field: &Field, f: &LinearizedPoly, g: &LinearizedPoly) -> LinearizedPoly {
    if f.is_zero() || g.is_zero() {
        return LinearizedPoly::zero();
    }
    let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &fi) in f.coeffs.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, &gj) in g.coeffs.iter().enumerate() {
            let term = field.mul(fi, field.frobenius(gj, i as i64));
            out[i + j] = field.add(out[i + j], term);
        }
    }
    LinearizedPoly::new(out)
}

fn basis_elements(field: &Field, u: &Subspace) -> Result<Vec<FieldElement>> {
    if u.ambient() != field.m() || u.fq() != field.base() {
        return Err(Error::DimensionMismatch(format!(
            "subspace of F_{}^{} is not a subspace of F_{}^{}",
            u.fq().q(),
            u.ambient(),
            field.q(),
            field.m()
        )));
    }
    (0..u.dim())
        .map(|i| field.from_coeffs(u.basis().row(i)))
        .collect()
}

/// Monic annihilator of `U` of q-degree `dim U`, built from a basis
/// `b_1, …, b_r` by `M_{i+1} = M_i^{[1]} − M_i(b_{i+1})^{q−1} M_i`.
pub fn min_subspace_poly_from_basis(
    field: &Field,
    basis: &[FieldElement],
) -> Result<LinearizedPoly> {
    let mut poly = LinearizedPoly::identity();
    for &b in basis {
        let v = poly.evaluate(field, b);
        if v.is_zero() {
            return Err(Error::Precondition(
                "basis is not F_q-linearly independent".into(),
            ));
        }
        let factor = field.pow(v, field.q() as u128 - 1);
        poly = poly
            .frobenius_shift(field)
            .sub(field, &poly.scale(field, factor));
    }
    Ok(poly)
}

/// Minimal subspace polynomial of `U ⊆ F_{q^m}` (given in coordinates).
pub fn min_subspace_poly(field: &Field, u: &Subspace) -> Result<LinearizedPoly> {
    min_subspace_poly_from_basis(field, &basis_elements(field, u)?)
}

/// `m × m` matrix of the `F_q`-linear map `a ↦ f(a)` in the polynomial basis.
pub fn linear_map_matrix(field: &Field, f: &LinearizedPoly) -> MatrixFq {
    let m = field.m();
    let mut mat = MatrixFq::zeros(field.base(), m, m);
    for j in 0..m {
        let image = f.evaluate(field, field.basis_element(j));
        for (i, c) in field.coeffs(image).into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    mat
}

/// The root space `{a : f(a) = 0}` as a subspace of `F_q^m`.
pub fn root_space(field: &Field, f: &LinearizedPoly) -> Result<Subspace> {
    if f.is_zero() {
        return Err(Error::Precondition(
            "root space of the zero polynomial".into(),
        ));
    }
    Ok(Subspace::from_generators(
        &linear_map_matrix(field, f).kernel(),
    ))
}
