use super::GeneratingVector;
use crate::error::{Error, Result};
use crate::groups::{build_cyclic, build_generalized_quaternion, GroupTable, IDENTITY};
use crate::numtheory::factorize;
use crate::rh::{check_genus, OrbifoldSignature};

/// The generalized quaternion group `G_n` of order `4n` with signature `(h; n)`.
///
/// The vector is `(x, y, e, e, …, e, y x⁻² y⁻¹)`; the last entry equals `x²`,
/// which has order `n`, and `[x, y] = x⁻²` cancels it. The resulting surface
/// has genus `2n(2(h−1)+1) − 1`.
pub fn quaternion_vector(
    n: usize,
    h: u64,
) -> Result<(GroupTable, OrbifoldSignature, GeneratingVector)> {
    if h == 0 {
        return Err(Error::InvalidParameter("quotient genus must be >= 1".into()));
    }
    let g = build_generalized_quaternion(n)?;
    let x = 1;
    let y = 2 * n;
    let x_inv2 = g.inv(g.mul(x, x));
    let c = g.mul(g.mul(y, x_inv2), g.inv(y));
    let mut pairs = vec![(x, y)];
    pairs.resize(h as usize, (IDENTITY, IDENTITY));
    let sig = OrbifoldSignature::new(h, vec![n as u64]);
    Ok((g, sig, GeneratingVector::new(pairs, vec![c])))
}

/// `C_N` acting freely with quotient genus `(σ−1)/N + 1`, when `N | σ−1`.
pub fn unbranched_cyclic(
    sigma: u64,
    order: u64,
) -> Result<Option<(GroupTable, OrbifoldSignature, GeneratingVector)>> {
    check_genus(sigma)?;
    if order < 2 || !(sigma - 1).is_multiple_of(order) {
        return Ok(None);
    }
    let h = (sigma - 1) / order + 1;
    let g = build_cyclic(order as usize)?;
    let mut pairs = vec![(1, IDENTITY)];
    pairs.resize(h as usize, (IDENTITY, IDENTITY));
    Ok(Some((
        g,
        OrbifoldSignature::new(h, vec![]),
        GeneratingVector::new(pairs, vec![]),
    )))
}

/// Sufficient condition for the unbranched point `((σ−1)/N + 1, 0)` to be a
/// skeleton of every group of order `N`: `N | σ−1` and
/// `(σ−1)/N + 1 ≥ k + 1`, where `k` is the largest exponent in the prime
/// factorization of `N`.
pub fn all_groups_unbranched_condition(sigma: u64, order: u64) -> Result<bool> {
    check_genus(sigma)?;
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    if !(sigma - 1).is_multiple_of(order) {
        return Ok(false);
    }
    let k = factorize(order).iter().map(|&(_, e)| e as u64).max().unwrap_or(0);
    Ok((sigma - 1) / order + 1 > k)
}
