use super::{Elem, GroupError, GroupTable};
use crate::numtheory::is_prime;

fn from_fn(
    name: String,
    order: usize,
    mul: impl Fn(Elem, Elem) -> Elem,
) -> Result<GroupTable, GroupError> {
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(mul(a, b) as u32);
        }
    }
    GroupTable::from_flat(name, order, table)
}

fn power_word(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        k => format!("{var}^{k}"),
    }
}

fn join_word(parts: &[String]) -> String {
    let parts: Vec<&str> = parts.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join("")
    }
}

/// `C_n`, element `k` being `x^k`.
pub fn build_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic group order must be >= 1".into()));
    }
    let words = (0..n).map(|k| join_word(&[power_word("x", k)])).collect();
    Ok(from_fn(format!("C{n}"), n, |a, b| (a + b) % n)?.with_words(words))
}

/// `(C_p)^k`, elements indexed by their base-`p` digit vectors.
pub fn build_elementary_abelian(p: usize, k: u32) -> Result<GroupTable, GroupError> {
    if !is_prime(p as u64) {
        return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(GroupError::InvalidParameter("exponent must be >= 1".into()));
    }
    let order = p.pow(k);
    let add = |mut a: usize, mut b: usize| {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };
    let name = if k == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{k}")
    };
    from_fn(name, order, add)
}

/// Dihedral group of order `2n`: `r^a s^b`, index `a + n·b`, with `s r s = r⁻¹`.
pub fn build_dihedral(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("dihedral parameter must be >= 1".into()));
    }
    let mul = |x: Elem, y: Elem| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    };
    let words = (0..2 * n)
        .map(|x| join_word(&[power_word("r", x % n), power_word("s", x / n)]))
        .collect();
    Ok(from_fn(format!("D{}", 2 * n), 2 * n, mul)?.with_words(words))
}

/// Generalized quaternion (dicyclic) group `⟨x, y | xⁿ = y², y⁻¹xy = x⁻¹⟩` of order `4n`.
///
/// Elements are `x^a y^b` with `a ∈ [0, 2n)`, `b ∈ {0, 1}`, stored at index
/// `a + 2n·b`. Products reduce with `y·x = x⁻¹·y` and `y² = xⁿ`.
pub fn build_generalized_quaternion(n: usize) -> Result<GroupTable, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "generalized quaternion parameter must be >= 2, got {n}"
        )));
    }
    let m = 2 * n;
    let mul = |u: Elem, v: Elem| {
        let (a, b) = (u % m, u / m);
        let (c, d) = (v % m, v / m);
        // x^a y^b x^c y^d = x^(a ± c) y^(b + d)
        let mut e = if b == 0 { a + c } else { a + m - c };
        let mut f = b + d;
        if f == 2 {
            e += n;
            f = 0;
        }
        e % m + m * f
    };
    let words = (0..2 * m)
        .map(|u| join_word(&[power_word("x", u % m), power_word("y", u / m)]))
        .collect();
    let name = if n == 2 {
        "Q8".to_string()
    } else {
        format!("Q{}", 4 * n)
    };
    Ok(from_fn(name, 2 * m, mul)?.with_words(words))
}

/// `A × B`, pair `(i, j)` stored at index `i·|B| + j`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
    let nb = b.order();
    let name = format!("{}x{}", a.name(), b.name());
    let mul = |x: Elem, y: Elem| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    from_fn(name, a.order() * nb, mul)
}
