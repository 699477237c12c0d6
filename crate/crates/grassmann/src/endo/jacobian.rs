use super::Endomorphism;
use crate::algebra::{check_index, GrassmannElement};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::skewcalc::partial;

/// The Jacobian matrix (∂σ(xᵢ)/∂xⱼ), its determinant and the determinant's valuation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobianData<C> {
    /// `matrix[i][j]` = ∂_{j+1} σ(x_{i+1}).
    pub matrix: Vec<Vec<GrassmannElement<C>>>,
    pub det: GrassmannElement<C>,
    pub valuation: usize,
}

pub(super) fn jacobian<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<JacobianData<C>> {
    let n = sigma.n();
    if let Some(k) = sigma.images().iter().position(|img| !img.is_odd()) {
        return Err(Error::Parity(k + 1));
    }
    let matrix: Vec<Vec<_>> =
        sigma.images().iter().map(|img| (1..=n).map(|j| partial(j, img)).collect()).collect();
    let det = determinant(&matrix);
    let valuation = valuation(&det);
    Ok(JacobianData { matrix, det, valuation })
}

/// Cofactor expansion along the last row, memoised over column subsets.
/// The entries must commute pairwise.
pub fn determinant<C: Coefficient>(m: &[Vec<GrassmannElement<C>>]) -> GrassmannElement<C> {
    let k = m.len();
    let n = m.first().and_then(|r| r.first()).map(|e| e.n());
    let Some(n) = n else {
        return GrassmannElement::one(1);
    };
    let mut table: Vec<GrassmannElement<C>> = Vec::with_capacity(1 << k);
    table.push(GrassmannElement::one(n));
    for set in 1u32..(1 << k) {
        let row = set.count_ones() as usize - 1;
        let mut acc = GrassmannElement::zero(n);
        let mut cols = set;
        while cols != 0 {
            let j = cols.trailing_zeros();
            cols &= cols - 1;
            let rest = &table[(set & !(1 << j)) as usize];
            if rest.is_zero() || m[row][j as usize].is_zero() {
                continue;
            }
            let t = &m[row][j as usize] * rest;
            if (set >> (j + 1)).count_ones() % 2 == 1 {
                acc -= &t;
            } else {
                acc += &t;
            }
        }
        table.push(acc);
    }
    table.pop().expect("nonempty table")
}

/// max{2m : det − det(0) ∈ 𝔪^{2m}}, or 2⌊n/2⌋ + 2 when det is constant.
pub fn valuation<C: Coefficient>(det: &GrassmannElement<C>) -> usize {
    let n = det.n();
    match det.filter(|m| m != 0).min_degree() {
        None => 2 * (n / 2) + 2,
        Some(d) => 2 * (d / 2),
    }
}

/// The skew derivations ∂′ᵢ dual to the coordinates σ(x₁), …, σ(xₙ):
/// ∂′ᵢ = J⁻¹ Σⱼ (−1)^{i+j} Mᵢⱼ ∂ⱼ.
#[derive(Clone, Debug)]
pub struct DualDerivatives<C> {
    jinv: GrassmannElement<C>,
    /// `cofactors[i][j]` = (−1)^{i+j} M_{ij}, pre-multiplied by J⁻¹.
    scaled_cofactors: Vec<Vec<GrassmannElement<C>>>,
}

impl<C: Coefficient> DualDerivatives<C> {
    pub fn new(sigma: &Endomorphism<C>) -> Result<Self> {
        let jac = sigma.jacobian()?;
        let jinv = jac
            .det
            .invert_unit()
            .map_err(|_| Error::NotInvertible("the Jacobian is not a unit".into()))?;
        let n = sigma.n();
        let mut scaled_cofactors = vec![Vec::with_capacity(n); n];
        for (i, row) in scaled_cofactors.iter_mut().enumerate() {
            for j in 0..n {
                let minor: Vec<Vec<_>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| jac.matrix[r][c].clone()).collect())
                    .collect();
                let mut c = if n == 1 { GrassmannElement::one(1) } else { determinant(&minor) };
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                row.push(&jinv * &c);
            }
        }
        Ok(DualDerivatives { jinv, scaled_cofactors })
    }

    pub fn jacobian_inverse(&self) -> &GrassmannElement<C> {
        &self.jinv
    }

    /// ∂′ᵢ(e), 1-based.
    pub fn apply(&self, i: usize, e: &GrassmannElement<C>) -> GrassmannElement<C> {
        let row = &self.scaled_cofactors[i - 1];
        let mut out = GrassmannElement::zero(e.n());
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = partial(j + 1, e);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }
}

/// ∂′ᵢ(e) for the coordinates σ(x₁), …, σ(xₙ).
pub fn skew_partial_prime<C: Coefficient>(
    sigma: &Endomorphism<C>,
    i: usize,
    e: &GrassmannElement<C>,
) -> Result<GrassmannElement<C>> {
    check_index(sigma.n(), i)?;
    if e.n() != sigma.n() {
        return Err(Error::DimensionMismatch { expected: sigma.n(), found: e.n() });
    }
    Ok(DualDerivatives::new(sigma)?.apply(i, e))
}
