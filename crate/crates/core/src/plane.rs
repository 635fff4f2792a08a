//! Exact loci in the `(h, r)`-plane.
//!
//! For a genus `σ` and group order `N`, the period bounds `2 ≤ n_j ≤ N` turn
//! the Riemann–Hurwitz formula into a pair of lines:
//!
//! * lower line `L(σ,N)`: `2N·h + (N−1)·r = 2σ − 2 + 2N`
//! * upper line `U(σ,N)`: `4N·h + N·r = 4(N + σ − 1)`
//!
//! They meet at `(1 + (σ−1)/N, 0)` and bound the closed triangle `P(σ,N)`.
//! Consecutive triangles overlap in a saw-tooth; the wedges between `L(σ,N)`
//! and `U(σ,N+1)` (or `U(σ,N+2)` when `N+1` is prime) hold no skeletal
//! signatures except along the cyclic line of order `N+1`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::rational::Rational;
use crate::rh::{check_genus, check_order, SkeletalSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPoint {
    pub h: Rational,
    pub r: Rational,
}

impl RationalPoint {
    pub fn new(h: Rational, r: Rational) -> Self {
        RationalPoint { h, r }
    }

    pub fn int(h: i128, r: i128) -> Self {
        RationalPoint::new(Rational::from_int(h), Rational::from_int(r))
    }

    pub fn is_lattice(&self) -> bool {
        self.h.is_integer() && self.r.is_integer()
    }
}

impl From<SkeletalSignature> for RationalPoint {
    fn from(s: SkeletalSignature) -> Self {
        RationalPoint::int(s.h as i128, s.r as i128)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.r)
    }
}

/// The line `a·h + b·r = c`, normalized so that `gcd(a, b, c) = 1` and the
/// first non-zero of `(a, b)` is positive. Equal lines compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalLine {
    a: i128,
    b: i128,
    c: i128,
}

impl RationalLine {
    pub fn new(a: i128, b: i128, c: i128) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidParameter("degenerate line 0 = c".into()));
        }
        let g = a.gcd(&b).gcd(&c);
        let sign = if a < 0 || (a == 0 && b < 0) { -1 } else { 1 };
        Ok(RationalLine {
            a: sign * a / g,
            b: sign * b / g,
            c: sign * c / g,
        })
    }

    pub fn coefficients(&self) -> (i128, i128, i128) {
        (self.a, self.b, self.c)
    }

    /// `a·h + b·r − c`: zero on the line, its sign tells the side.
    pub fn eval(&self, p: &RationalPoint) -> Rational {
        p.h * self.a + p.r * self.b - self.c
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// The `r`-coordinate of the line above `h`, if the line is not vertical.
    pub fn r_at(&self, h: Rational) -> Option<Rational> {
        (self.b != 0).then(|| (Rational::from_int(self.c) - h * self.a) / self.b)
    }

    /// `dr/dh`, or `None` for a vertical line.
    pub fn slope(&self) -> Option<Rational> {
        (self.b != 0).then(|| Rational::new(-self.a, self.b))
    }

    pub fn intersect(&self, other: &RationalLine) -> Option<RationalPoint> {
        let det = self.a * other.b - self.b * other.a;
        if det == 0 {
            return None;
        }
        let h = Rational::new(self.c * other.b - self.b * other.c, det);
        let r = Rational::new(self.a * other.c - self.c * other.a, det);
        Some(RationalPoint::new(h, r))
    }
}

impl fmt::Display for RationalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |coef: i128, var: &str| match coef {
            1 => var.to_string(),
            -1 => format!("-{var}"),
            k => format!("{k}{var}"),
        };
        match (self.a, self.b) {
            (0, b) => write!(f, "{} = {}", term(b, "r"), self.c),
            (a, 0) => write!(f, "{} = {}", term(a, "h"), self.c),
            (a, b) if b < 0 => write!(f, "{} - {} = {}", term(a, "h"), term(-b, "r"), self.c),
            (a, b) => write!(f, "{} + {} = {}", term(a, "h"), term(b, "r"), self.c),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    coefficients: [i128; 3],
    equation: String,
}

impl Serialize for RationalLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LineRepr {
            coefficients: [self.a, self.b, self.c],
            equation: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalLine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LineRepr::deserialize(d)?;
        let [a, b, c] = repr.coefficients;
        RationalLine::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

/// `L(σ,N)`: `2N·h + (N−1)·r = 2σ − 2 + 2N`.
pub fn lower_line(sigma: u64, order: u64) -> Result<RationalLine> {
    check_genus(sigma)?;
    check_order(order)?;
    let (s, n) = (sigma as i128, order as i128);
    RationalLine::new(2 * n, n - 1, 2 * s - 2 + 2 * n)
}

/// `U(σ,N)`: `4N·h + N·r = 4(N + σ − 1)`.
pub fn upper_line(sigma: u64, order: u64) -> Result<RationalLine> {
    check_genus(sigma)?;
    check_order(order)?;
    let (s, n) = (sigma as i128, order as i128);
    RationalLine::new(4 * n, n, 4 * (n + s - 1))
}

/// Line carrying every skeleton of a `(C_p)^k` action:
/// `2p^k·h + (p−1)p^(k−1)·r = 2p^k − 2 + 2σ`.
pub fn p_group_line(sigma: u64, p: u64, k: u32) -> Result<RationalLine> {
    check_genus(sigma)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("exponent must be at least 1".into()));
    }
    let (s, p) = (sigma as i128, p as i128);
    let pk = p.pow(k);
    RationalLine::new(2 * pk, (p - 1) * p.pow(k - 1), 2 * pk - 2 + 2 * s)
}

/// Point shared by every lower line: `(σ, 2 − 2σ)`.
pub fn common_point(sigma: u64) -> Result<RationalPoint> {
    check_genus(sigma)?;
    Ok(RationalPoint::int(sigma as i128, 2 - 2 * sigma as i128))
}

/// The closed triangle `P(σ,N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleRegion {
    pub sigma: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub lower: RationalLine,
    pub upper: RationalLine,
    pub apex: RationalPoint,
}

pub fn triangle(sigma: u64, order: u64) -> Result<TriangleRegion> {
    let lower = lower_line(sigma, order)?;
    let upper = upper_line(sigma, order)?;
    let apex = RationalPoint::new(
        Rational::ONE + Rational::new(sigma as i128 - 1, order as i128),
        Rational::ZERO,
    );
    debug_assert!(lower.contains(&apex) && upper.contains(&apex));
    Ok(TriangleRegion {
        sigma,
        order,
        lower,
        upper,
        apex,
    })
}

impl TriangleRegion {
    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    /// Closed membership: `0 ≤ h ≤ apex.h`, `r ≥ 0`, between the two lines.
    pub fn member(&self, p: &RationalPoint) -> bool {
        if p.h.is_negative() || p.h > self.apex.h || p.r.is_negative() {
            return false;
        }
        let lo = self.lower.r_at(p.h).expect("lower line is not vertical");
        let hi = self.upper.r_at(p.h).expect("upper line is not vertical");
        lo <= p.r && p.r <= hi
    }

    /// Lattice points in lexicographic order.
    pub fn integer_points(&self) -> Vec<SkeletalSignature> {
        let mut out = Vec::new();
        for h in 0..=self.apex.h.floor() {
            let hq = Rational::from_int(h);
            let lo = self.lower.r_at(hq).unwrap().ceil().max(0);
            let hi = self.upper.r_at(hq).unwrap().floor();
            for r in lo..=hi {
                out.push(SkeletalSignature::new(h as u64, r as u64));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapSpan {
    /// Between `L(σ,N)` and `U(σ,N+1)`; `N+1` composite.
    Next,
    /// Between `L(σ,N)` and `U(σ,N+2)`; `N+1` prime.
    Skip,
}

/// Open wedge to the right of `corner`, strictly between the two boundary lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRegion {
    pub sigma: u64,
    #[serde(rename = "N")]
    pub lower_index: u64,
    pub span: GapSpan,
    pub boundary_lower: RationalLine,
    pub boundary_upper: RationalLine,
    pub corner: RationalPoint,
    #[serde(rename = "exceptionLine")]
    pub exception_line: Option<RationalLine>,
}

pub fn gap(sigma: u64, n: u64) -> Result<GapRegion> {
    check_genus(sigma)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "gaps are defined for N >= 3, got {n}"
        )));
    }
    let span = if is_prime(n + 1) {
        GapSpan::Skip
    } else {
        GapSpan::Next
    };
    let upper_order = match span {
        GapSpan::Next => n + 1,
        GapSpan::Skip => n + 2,
    };
    let boundary_lower = lower_line(sigma, n)?;
    let boundary_upper = upper_line(sigma, upper_order)?;
    let corner = boundary_lower
        .intersect(&boundary_upper)
        .expect("lower and upper lines have different slopes for N >= 3");
    let exception_line = match span {
        GapSpan::Next => None,
        GapSpan::Skip => Some(p_group_line(sigma, n + 1, 1)?),
    };
    Ok(GapRegion {
        sigma,
        lower_index: n,
        span,
        boundary_lower,
        boundary_upper,
        corner,
        exception_line,
    })
}

/// Closed forms of the gap corners.
pub fn corner_formula(sigma: u64, n: u64, span: GapSpan) -> RationalPoint {
    let (s, n) = (sigma as i128, n as i128);
    match span {
        GapSpan::Next => {
            let d = (n - 2) * (n + 1);
            RationalPoint::new(
                Rational::new((n - 1) * (n - 1) + s * (n - 3), d),
                Rational::new(4 * (s - 1), d),
            )
        }
        GapSpan::Skip => {
            let d = n * n - 4;
            RationalPoint::new(
                Rational::new(n * n - n + s * (n - 4), d),
                Rational::new(8 * (s - 1), d),
            )
        }
    }
}

/// Lattice points of a gap with `r ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapLattice {
    /// Every lattice point of the open wedge.
    pub raw: Vec<SkeletalSignature>,
    /// `raw` minus the exception line.
    pub filtered: Vec<SkeletalSignature>,
    /// Points of `raw` on the exception line.
    pub exception: Vec<SkeletalSignature>,
}

impl GapRegion {
    pub fn upper_order(&self) -> u64 {
        match self.span {
            GapSpan::Next => self.lower_index + 1,
            GapSpan::Skip => self.lower_index + 2,
        }
    }

    /// Membership in the open wedge, ignoring the exception line.
    pub fn member_raw(&self, p: &RationalPoint) -> bool {
        if p.h <= self.corner.h {
            return false;
        }
        let lo = self.boundary_upper.r_at(p.h).unwrap();
        let hi = self.boundary_lower.r_at(p.h).unwrap();
        lo < p.r && p.r < hi
    }

    pub fn member(&self, p: &RationalPoint) -> bool {
        self.member_raw(p) && !self.exception_line.is_some_and(|l| l.contains(p))
    }

    pub fn integer_points(&self) -> GapLattice {
        let mut lattice = GapLattice::default();
        // L(σ,N) reaches r = 0 at its triangle's apex; beyond it the wedge has r < 0.
        let apex_h = Rational::ONE + Rational::new(self.sigma as i128 - 1, self.lower_index as i128);
        let first = self.corner.h.floor() + 1;
        for h in first.max(0)..=apex_h.ceil() {
            let hq = Rational::from_int(h);
            let lo = self.boundary_upper.r_at(hq).unwrap().floor() + 1;
            let hi = self.boundary_lower.r_at(hq).unwrap().ceil() - 1;
            for r in lo.max(0)..=hi {
                let s = SkeletalSignature::new(h as u64, r as u64);
                debug_assert!(self.member_raw(&s.into()));
                lattice.raw.push(s);
                if self.exception_line.is_some_and(|l| l.contains(&s.into())) {
                    lattice.exception.push(s);
                } else {
                    lattice.filtered.push(s);
                }
            }
        }
        lattice
    }
}

/// Nearest integer, exact halves away from zero.
pub fn nearest_int(x: Rational) -> i128 {
    x.round_half_away()
}

/// Points of the form `(h, [2σ/3 − k])` that sit in the `G(σ,4,6)` wedge.
///
/// * `h = 2` (`σ ≥ 7`): `[2σ/3 − 4]`.
/// * `h = 3` (`σ ≥ 18`): `[2σ/3 − 7]`, `[2σ/3 − 8]`, plus `[2σ/3 − 6]` when `σ ≡ 2 (mod 3)`.
///
/// Every returned point lies strictly inside the wedge. The cyclic line of
/// order 5 is not excluded here: at `σ = 8` the point `(2, 1)` sits on it.
pub fn missing_points(sigma: u64, h: u64) -> Result<Vec<SkeletalSignature>> {
    let two_thirds = Rational::new(2 * sigma as i128, 3);
    let at = |k: i128| nearest_int(two_thirds - k);
    let rs: Vec<i128> = match h {
        2 if sigma >= 7 => vec![at(4)],
        3 if sigma >= 18 => {
            let mut v = vec![at(7), at(8)];
            if sigma % 3 == 2 {
                v.push(at(6));
            }
            v
        }
        2 | 3 => {
            return Err(Error::InvalidParameter(format!(
                "genus {sigma} is below the range for h = {h}"
            )))
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "missing points are defined for h = 2 or 3, got {h}"
            )))
        }
    };
    let region = gap(sigma, 4)?;
    let points: Vec<SkeletalSignature> = rs
        .into_iter()
        .map(|r| SkeletalSignature::new(h, r as u64))
        .collect();
    for p in &points {
        assert!(
            region.member_raw(&(*p).into()),
            "{p} escaped G({sigma},4,6)"
        );
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(a: i128, b: i128, c: i128) -> RationalLine {
        RationalLine::new(a, b, c).unwrap()
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn normalization() {
        assert_eq!(line(6, 2, 100), line(3, 1, 50));
        assert_eq!(line(-6, -2, -100), line(3, 1, 50));
        assert_eq!(line(0, -2, 4), line(0, 1, -2));
        assert!(RationalLine::new(0, 0, 1).is_err());
        assert_eq!(line(3, 1, 50).to_string(), "3h + r = 50");
    }

    #[test]
    fn lower_lines() {
        assert_eq!(lower_line(48, 3).unwrap(), line(3, 1, 50));
        assert_eq!(lower_line(48, 4).unwrap(), line(8, 3, 102));
        for s in 2..40 {
            assert_eq!(lower_line(s, 2).unwrap(), line(4, 1, 2 * s as i128 + 2));
        }
    }

    #[test]
    fn upper_lines() {
        assert_eq!(upper_line(48, 4).unwrap(), line(4, 1, 51));
        assert_eq!(upper_line(48, 6).unwrap(), line(12, 3, 106));
        for s in 2..40 {
            assert_eq!(upper_line(s, 2).unwrap(), lower_line(s, 2).unwrap());
        }
    }

    #[test]
    fn p_group_lines() {
        assert_eq!(p_group_line(48, 2, 1).unwrap(), line(4, 1, 98));
        assert_eq!(p_group_line(48, 5, 1).unwrap(), line(5, 2, 52));
        assert!(p_group_line(48, 5, 1).unwrap().contains(&RationalPoint::int(8, 6)));
        for s in 2..30 {
            assert_eq!(p_group_line(s, 2, 1).unwrap(), lower_line(s, 2).unwrap());
        }
        assert_eq!(p_group_line(48, 4, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn triangle_examples() {
        let t = triangle(48, 4).unwrap();
        assert!(!t.member(&RationalPoint::int(8, 6)));
        assert_eq!(t.lower.r_at(Rational::from_int(8)).unwrap(), q(38, 3));
        assert_eq!(t.apex, RationalPoint::new(q(51, 4), Rational::ZERO));
        assert!(t.member(&t.apex));

        let t2 = triangle(10, 2).unwrap();
        assert!(t2.is_degenerate());
        assert!(t2.member(&RationalPoint::int(0, 22)));
        assert!(!t2.member(&RationalPoint::int(0, 21)));
        assert_eq!(t2.apex.h, q(11, 2));
        let pts = t2.integer_points();
        assert!(pts.iter().all(|p| 4 * p.h + p.r == 22));
        assert_eq!(pts.len(), 6);
    }

    #[test]
    fn gap_corners() {
        let g = gap(48, 3).unwrap();
        assert_eq!(g.span, GapSpan::Next);
        assert_eq!(g.corner, RationalPoint::int(1, 47));
        assert_eq!(g.exception_line, None);

        let g = gap(48, 4).unwrap();
        assert_eq!(g.span, GapSpan::Skip);
        assert_eq!(g.corner, RationalPoint::new(Rational::ONE, q(94, 3)));
        assert_eq!(g.exception_line, Some(line(5, 2, 52)));

        assert!(gap(48, 2).is_err());
    }

    #[test]
    fn corners_match_closed_forms() {
        for s in 2..60 {
            for n in 3..40 {
                let g = gap(s, n).unwrap();
                assert_eq!(g.corner, corner_formula(s, n, g.span), "σ={s} N={n}");
                assert!(g.boundary_lower.contains(&g.corner));
                assert!(g.boundary_upper.contains(&g.corner));
            }
        }
    }

    #[test]
    fn gap_membership() {
        let g46 = gap(48, 4).unwrap();
        assert!(g46.member(&RationalPoint::int(3, 24)));
        assert!(!g46.member(&RationalPoint::int(8, 6)));
        assert!(g46.member_raw(&RationalPoint::int(8, 6)));
        let g34 = gap(48, 3).unwrap();
        assert!(!g34.member(&RationalPoint::int(1, 47)));
        assert!(g34.member(&RationalPoint::int(3, 40)));
        // boundary is excluded
        assert!(!g34.member(&RationalPoint::int(3, 41)));
        assert!(!g34.member(&RationalPoint::int(3, 39)));
    }

    #[test]
    fn gap_lattice() {
        let g46 = gap(48, 4).unwrap().integer_points();
        let ex: Vec<_> = g46.exception.iter().map(|p| (p.h, p.r)).collect();
        assert_eq!(ex, vec![(8, 6), (10, 1)]);

        let g34 = gap(48, 3).unwrap().integer_points();
        assert!(g34.raw.iter().all(|p| p.h != 2));
        let at3: Vec<_> = g34.raw.iter().filter(|p| p.h == 3).map(|p| p.r).collect();
        assert_eq!(at3, vec![40]);
        assert_eq!(g34.raw, g34.filtered);
    }

    #[test]
    fn lattice_against_brute_force() {
        for s in 2..40 {
            for n in 3..12 {
                let g = gap(s, n).unwrap();
                let lat = g.integer_points();
                let mut brute = Vec::new();
                for h in 0..=(s as i128 + 2) {
                    for r in 0..=(4 * s as i128 + 8) {
                        let p = RationalPoint::int(h, r);
                        if g.member_raw(&p) {
                            brute.push(SkeletalSignature::new(h as u64, r as u64));
                        }
                    }
                }
                assert_eq!(lat.raw, brute, "σ={s} N={n}");

                let t = triangle(s, n).unwrap();
                let mut brute = Vec::new();
                for h in 0..=(s as i128 + 2) {
                    for r in 0..=(4 * s as i128 + 8) {
                        if t.member(&RationalPoint::int(h, r)) {
                            brute.push(SkeletalSignature::new(h as u64, r as u64));
                        }
                    }
                }
                assert_eq!(t.integer_points(), brute);
            }
        }
    }

    #[test]
    fn nearest_examples() {
        assert_eq!(nearest_int(q(94, 3)), 31);
        assert_eq!(nearest_int(Rational::from_int(28)), 28);
        assert_eq!(nearest_int(q(-7, 2)), -4);
    }

    #[test]
    fn missing_examples() {
        let pts = |s, h| -> Vec<(u64, u64)> {
            missing_points(s, h).unwrap().iter().map(|p| (p.h, p.r)).collect()
        };
        assert_eq!(pts(48, 2), vec![(2, 28)]);
        assert_eq!(pts(48, 3), vec![(3, 25), (3, 24)]);
        assert_eq!(pts(20, 3), vec![(3, 6), (3, 5), (3, 7)]);
        assert!(missing_points(6, 2).is_err());
        assert!(missing_points(17, 3).is_err());
        assert!(missing_points(40, 4).is_err());
    }

    #[test]
    fn missing_points_in_gap() {
        for s in 7..=300 {
            for h in [2, 3] {
                let Ok(points) = missing_points(s, h) else {
                    continue;
                };
                let g = gap(s, 4).unwrap();
                for p in points {
                    let on_exception = (s, h) == (8, 2);
                    assert_eq!(g.member(&p.into()), !on_exception, "σ={s} {p}");
                }
            }
        }
        // (2,1) lies on 5h + 2r = σ + 4 when σ = 8
        assert!(gap(8, 4)
            .unwrap()
            .exception_line
            .unwrap()
            .contains(&RationalPoint::int(2, 1)));
    }

    #[test]
    fn common_points() {
        assert_eq!(common_point(48).unwrap(), RationalPoint::int(48, -94));
        assert_eq!(common_point(2).unwrap(), RationalPoint::int(2, -2));
        let p = common_point(10).unwrap();
        for n in 2..=200 {
            assert!(lower_line(10, n).unwrap().contains(&p));
        }
    }

    #[test]
    fn slopes() {
        for s in 2..30 {
            for n in 2..50 {
                assert_eq!(upper_line(s, n).unwrap().slope(), Some(Rational::from_int(-4)));
                assert_eq!(
                    lower_line(s, n).unwrap().slope(),
                    Some(Rational::new(-2 * n as i128, n as i128 - 1))
                );
            }
        }
    }

    #[test]
    fn json_shape() {
        let g = gap(48, 4).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["N"], 4);
        assert_eq!(v["corner"]["r"], "94/3");
        assert_eq!(v["exceptionLine"]["coefficients"], serde_json::json!([5, 2, 52]));
        let back: GapRegion = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }
}
