//! Built-in groups with fixed canonical numbering.
//!
//! | preset | numbering |
//! |---|---|
//! | `cyclic:n` | `i = gⁱ` |
//! | `elementary_abelian:p,k` | vectors over `Z_p`, lexicographic |
//! | `direct_product:...` | pairs `(x, y)` numbered `x·|B| + y` |
//! | `dihedral:n` | `0..n` are `rⁱ`, `n..2n` are `rⁱs`, `s·r·s = r⁻¹` |
//! | `dicyclic:m` | `a^i, a^(i+m)` pairs, then the same times `x` |
//! | `heisenberg:p` | triples `(a, b, c)`, lexicographic |
//! | `symmetric:n`, `alternating:n` | image arrays, lexicographic |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{validate_group, Group};
use crate::table::{OpTable, Permutation};

/// Largest order a preset may have.
pub const MAX_PRESET_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Preset {
    Cyclic(usize),
    ElementaryAbelian { p: usize, k: usize },
    DirectProduct(Vec<Preset>),
    Dihedral(usize),
    Dicyclic(usize),
    Heisenberg(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic(n) => write!(f, "cyclic:{n}"),
            Preset::ElementaryAbelian { p, k } => write!(f, "elementary_abelian:{p},{k}"),
            Preset::DirectProduct(factors) => {
                if factors.iter().all(|x| matches!(x, Preset::Cyclic(_))) {
                    let orders: Vec<String> = factors
                        .iter()
                        .map(|x| match x {
                            Preset::Cyclic(n) => n.to_string(),
                            _ => unreachable!(),
                        })
                        .collect();
                    write!(f, "direct_product:{}", orders.join(","))
                } else {
                    let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                    write!(f, "direct_product:{}", parts.join("/"))
                }
            }
            Preset::Dihedral(n) => write!(f, "dihedral:{n}"),
            Preset::Dicyclic(m) => write!(f, "dicyclic:{m}"),
            Preset::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Preset::Symmetric(n) => write!(f, "symmetric:{n}"),
            Preset::Alternating(n) => write!(f, "alternating:{n}"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// `name:args`. Direct products take either cyclic orders
    /// (`direct_product:4,2`) or presets separated by `/`
    /// (`direct_product:dihedral:4/cyclic:2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let ints = || -> Result<Vec<usize>> {
            args.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::BadParameters(format!("{s}: {x:?} is not a non-negative integer")))
                })
                .collect()
        };
        let one = || -> Result<usize> {
            match ints()?.as_slice() {
                [x] => Ok(*x),
                other => Err(Error::BadParameters(format!(
                    "{s}: expected one parameter, found {}",
                    other.len()
                ))),
            }
        };
        Ok(match name {
            "cyclic" => Preset::Cyclic(one()?),
            "dihedral" => Preset::Dihedral(one()?),
            "dicyclic" => Preset::Dicyclic(one()?),
            "heisenberg" => Preset::Heisenberg(one()?),
            "symmetric" => Preset::Symmetric(one()?),
            "alternating" => Preset::Alternating(one()?),
            "elementary_abelian" => match ints()?.as_slice() {
                [p, k] => Preset::ElementaryAbelian { p: *p, k: *k },
                _ => return Err(Error::BadParameters(format!("{s}: expected p,k"))),
            },
            "direct_product" => {
                let factors = if args.chars().any(|c| c.is_ascii_alphabetic()) {
                    args.split('/').map(str::parse).collect::<Result<Vec<Preset>>>()?
                } else {
                    ints()?.into_iter().map(Preset::Cyclic).collect()
                };
                if factors.is_empty() {
                    return Err(Error::BadParameters(format!("{s}: no factors")));
                }
                Preset::DirectProduct(factors)
            }
            _ => return Err(Error::BadParameters(format!("unknown preset {name:?}"))),
        })
    }
}

impl Preset {
    pub fn order(&self) -> Option<usize> {
        match self {
            Preset::Cyclic(n) => Some(*n),
            Preset::ElementaryAbelian { p, k } => p.checked_pow(u32::try_from(*k).ok()?),
            Preset::DirectProduct(fs) => {
                fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?))
            }
            Preset::Dihedral(n) => n.checked_mul(2),
            Preset::Dicyclic(m) => m.checked_mul(4),
            Preset::Heisenberg(p) => p.checked_pow(3),
            Preset::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            Preset::Alternating(n) => {
                let f = (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k))?;
                Some(if *n >= 2 { f / 2 } else { f })
            }
        }
    }
}

/// Splits a comma-separated preset list, reattaching numeric tokens to the
/// preceding preset: `heisenberg:3,elementary_abelian:3,3` is two presets.
pub fn parse_preset_list(s: &str) -> Result<Vec<Preset>> {
    let mut items: Vec<String> = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match items.last_mut() {
            Some(last) if tok.chars().all(|c| c.is_ascii_digit()) => {
                last.push(',');
                last.push_str(tok);
            }
            _ => items.push(tok.to_string()),
        }
    }
    items.iter().map(|x| x.parse()).collect()
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn build_preset(p: &Preset) -> Result<Group> {
    let order = p
        .order()
        .filter(|&n| n <= MAX_PRESET_ORDER)
        .ok_or_else(|| Error::BadParameters(format!("{p}: order exceeds {MAX_PRESET_ORDER}")))?;
    let bad = |why: &str| Err(Error::BadParameters(format!("{p}: {why}")));
    match *p {
        Preset::Cyclic(n) => {
            if n == 0 {
                return bad("n must be at least 1");
            }
            cyclic(n)
        }
        Preset::ElementaryAbelian { p: q, k } => {
            if !is_prime(q) {
                return bad("p must be prime");
            }
            let mut g = cyclic(1)?;
            for _ in 0..k {
                g = direct_product(&g, &cyclic(q)?)?;
            }
            // plain coordinate names instead of nested pairs
            let names = (0..order).map(|i| coordinates(i, q, k)).collect();
            validate_group(g.into_table().with_names(names)?)
        }
        Preset::DirectProduct(ref factors) => {
            let mut groups = factors.iter().map(build_preset);
            let Some(first) = groups.next() else {
                return bad("no factors");
            };
            let mut acc = first?;
            for g in groups {
                acc = direct_product(&acc, &g?)?;
            }
            Ok(acc)
        }
        Preset::Dihedral(n) => {
            if n == 0 {
                return bad("n must be at least 1");
            }
            dihedral(n)
        }
        Preset::Dicyclic(m) => {
            if m == 0 {
                return bad("m must be at least 1");
            }
            dicyclic(m)
        }
        Preset::Heisenberg(q) => {
            if !is_prime(q) {
                return bad("p must be prime");
            }
            heisenberg(q)
        }
        Preset::Symmetric(n) => permutation_group(n, false),
        Preset::Alternating(n) => permutation_group(n, true),
    }
}

fn coordinates(mut i: usize, q: usize, k: usize) -> String {
    let mut digits = vec![0; k];
    for d in digits.iter_mut().rev() {
        *d = i % q;
        i /= q;
    }
    let parts: Vec<String> = digits.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(";"))
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => base.into(),
        _ => format!("{base}^{k}"),
    }
}

fn cyclic(n: usize) -> Result<Group> {
    let t = OpTable::from_fn(n, |a, b| (a + b) % n)?;
    validate_group(t.with_names((0..n).map(|i| power_name("g", i)).collect())?)
}

fn dihedral(n: usize) -> Result<Group> {
    // r^i s^u with u ∈ {0, 1}; s r^j = r^{-j} s
    let elem = |x: usize| (x % n, x / n);
    let t = OpTable::from_fn(2 * n, |a, b| {
        let ((i, u), (j, v)) = (elem(a), elem(b));
        let k = (if u == 0 { i + j } else { i + n - j }) % n;
        k + n * (u ^ v)
    })?;
    let names = (0..2 * n)
        .map(|x| {
            let (i, u) = elem(x);
            match (i, u) {
                (_, 0) => power_name("r", i),
                (0, _) => "s".into(),
                _ => format!("{}s", power_name("r", i)),
            }
        })
        .collect();
    validate_group(t.with_names(names)?)
}

fn dicyclic(m: usize) -> Result<Group> {
    // element a^k x^u, with a of order 2m, x² = a^m, x a x⁻¹ = a⁻¹
    let two_m = 2 * m;
    let decode = |x: usize| {
        let (u, r) = (x / two_m, x % two_m);
        (r / 2 + (r % 2) * m, u)
    };
    let encode = |k: usize, u: usize| {
        let k = k % two_m;
        let (i, flip) = if k >= m { (k - m, 1) } else { (k, 0) };
        u * two_m + 2 * i + flip
    };
    let t = OpTable::from_fn(4 * m, |a, b| {
        let ((k1, u1), (k2, u2)) = (decode(a), decode(b));
        match (u1, u2) {
            (0, u) => encode(k1 + k2, u),
            (1, 0) => encode(k1 + two_m - k2, 1),
            _ => encode(k1 + two_m - k2 + m, 0),
        }
    })?;
    let names = if m == 2 {
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec()
    } else {
        (0..4 * m)
            .map(|x| {
                let (k, u) = decode(x);
                match (k, u) {
                    (_, 0) => power_name("a", k),
                    (0, _) => "x".into(),
                    _ => format!("{}x", power_name("a", k)),
                }
            })
            .collect()
    };
    validate_group(t.with_names(names)?)
}

fn heisenberg(p: usize) -> Result<Group> {
    // unitriangular matrices with (1,2) entry a, (2,3) entry b, (1,3) entry c
    let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let t = OpTable::from_fn(p * p * p, |x, y| {
        let ((a, b, c), (a2, b2, c2)) = (decode(x), decode(y));
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    })?;
    let names = (0..p * p * p)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("({a};{b};{c})")
        })
        .collect();
    validate_group(t.with_names(names)?)
}

fn permutation_group(n: usize, even_only: bool) -> Result<Group> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        if !even_only || is_even(&current) {
            perms.push(current.clone());
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let t = OpTable::from_fn(perms.len(), |a, b| index[compose(&perms[a], &perms[b]).as_slice()])?;
    let names = perms
        .iter()
        .map(|p| {
            let perm = Permutation::from_images(p.clone()).expect("generated permutations are valid");
            if perm.is_identity() { "e".to_string() } else { perm.cycle_string() }
        })
        .collect();
    validate_group(t.with_names(names)?)
}

fn is_even(p: &[usize]) -> bool {
    let inversions: usize = (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum();
    inversions.is_multiple_of(2)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `A × B` with `(x, y)` numbered `x·|B| + y` and named `(x;y)`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let m = b.order();
    let n = a.order() * m;
    if n > MAX_PRESET_ORDER {
        return Err(Error::BadParameters(format!("direct product order {n} exceeds {MAX_PRESET_ORDER}")));
    }
    let t = OpTable::from_fn(n, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))?;
    let names = (0..n).map(|x| format!("({};{})", a.label(x / m), b.label(x % m))).collect();
    validate_group(t.with_names(names)?)
}

/// The groups used by the theorem harness and acceptance suite, in a fixed
/// order.
pub fn standard_catalog() -> Vec<Preset> {
    let mut out: Vec<Preset> = (1..=16).map(Preset::Cyclic).collect();
    out.push(Preset::ElementaryAbelian { p: 2, k: 3 });
    out.push(Preset::ElementaryAbelian { p: 3, k: 2 });
    out.push(Preset::DirectProduct(vec![Preset::Cyclic(4), Preset::Cyclic(2)]));
    out.extend((2..=8).map(Preset::Dihedral));
    out.extend([2, 3, 4].map(Preset::Dicyclic));
    out.push(Preset::Heisenberg(3));
    out.push(Preset::Symmetric(3));
    out.push(Preset::Symmetric(4));
    out.push(Preset::Alternating(4));
    out.push(Preset::DirectProduct(vec![Preset::Dihedral(4), Preset::Cyclic(2)]));
    out.push(Preset::DirectProduct(vec![Preset::Dicyclic(2), Preset::Cyclic(2)]));
    out.push(Preset::DirectProduct(vec![Preset::Symmetric(3), Preset::Cyclic(3)]));
    out
}

/// The four groups of order 27 used for the exploratory screen.
pub fn order_27_catalog() -> Vec<Preset> {
    vec![
        Preset::Cyclic(27),
        Preset::DirectProduct(vec![Preset::Cyclic(9), Preset::Cyclic(3)]),
        Preset::ElementaryAbelian { p: 3, k: 3 },
        Preset::Heisenberg(3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preset(s: &str) -> Group {
        build_preset(&s.parse::<Preset>().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "cyclic:4",
            "elementary_abelian:2,2",
            "direct_product:4,2",
            "direct_product:dihedral:4/cyclic:2",
            "heisenberg:3",
        ] {
            assert_eq!(s.parse::<Preset>().unwrap().to_string(), s);
        }
        assert!("cyclic".parse::<Preset>().is_err());
        assert!("cyclic:x".parse::<Preset>().is_err());
        assert!("torus:3".parse::<Preset>().is_err());
        assert!("elementary_abelian:2".parse::<Preset>().is_err());
    }

    #[test]
    fn preset_lists() {
        let list = parse_preset_list("heisenberg:3,cyclic:27,elementary_abelian:3,3,direct_product:9,3").unwrap();
        assert_eq!(
            list,
            vec![
                Preset::Heisenberg(3),
                Preset::Cyclic(27),
                Preset::ElementaryAbelian { p: 3, k: 3 },
                Preset::DirectProduct(vec![Preset::Cyclic(9), Preset::Cyclic(3)]),
            ]
        );
    }

    #[test]
    fn bad_parameters() {
        for s in ["cyclic:0", "heisenberg:4", "elementary_abelian:6,2", "symmetric:9", "dihedral:0"] {
            let p: Preset = s.parse().unwrap();
            assert!(matches!(build_preset(&p), Err(Error::BadParameters(_))), "{s}");
        }
    }

    #[test]
    fn orders() {
        for p in standard_catalog().iter().chain(order_27_catalog().iter()) {
            let g = build_preset(p).unwrap();
            assert_eq!(Some(g.order()), p.order(), "{p}");
            assert_eq!(g.identity(), 0, "{p}");
        }
        assert_eq!(preset("cyclic:1").order(), 1);
        assert_eq!(preset("alternating:4").order(), 12);
        assert_eq!(preset("symmetric:4").order(), 24);
    }

    #[test]
    fn q8_structure() {
        let q8 = preset("dicyclic:2");
        let (one, m1, i, mi, j, k) = (0, 1, 2, 3, 4, 6);
        assert_eq!(q8.mul(i, j), k);
        assert_eq!(q8.mul(i, i), m1);
        assert_eq!(q8.mul(j, i), 7);
        assert_eq!(q8.inv(i), mi);
        assert_eq!(q8.label(k), "k");
        assert_eq!(q8.identity(), one);
        // negation is index xor 1
        for x in 0..8 {
            assert_eq!(q8.mul(m1, x), x ^ 1);
        }
    }

    #[test]
    fn dicyclic_general() {
        let d3 = preset("dicyclic:3");
        assert_eq!(d3.order(), 12);
        assert_eq!(d3.center().len(), 2);
        assert!((0..12).filter(|&x| d3.element_order(x) == 2).count() == 1);
    }

    #[test]
    fn heisenberg_structure() {
        let h = preset("heisenberg:3");
        assert_eq!(h.order(), 27);
        assert!(!h.is_abelian());
        assert!((1..27).all(|x| h.element_order(x) == 3));
        assert_eq!(h.center().len(), 3);
        // (1,0,0)(0,1,0) = (1,1,1), (0,1,0)(1,0,0) = (1,1,0)
        assert_eq!(h.mul(9, 3), 13);
        assert_eq!(h.mul(3, 9), 12);
    }

    #[test]
    fn dihedral_numbering() {
        let d4 = preset("dihedral:4");
        let names: Vec<String> = (0..8).map(|x| d4.label(x)).collect();
        assert_eq!(names, ["e", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"]);
        // s r s = r⁻¹
        assert_eq!(d4.product(&[4, 1, 4]), 3);
        assert_eq!(preset("dihedral:1").order(), 2);
    }

    #[test]
    fn direct_product_center() {
        let a = preset("dihedral:4");
        let b = preset("dicyclic:2");
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 64);
        let expected: Vec<usize> = a
            .center()
            .iter()
            .flat_map(|&x| b.center().into_iter().map(move |y| x * 8 + y))
            .collect();
        assert_eq!(p.center(), expected);
    }

    #[test]
    fn symmetric_and_alternating() {
        let s3 = preset("symmetric:3");
        assert_eq!(s3.label(0), "e");
        assert!(!s3.is_abelian());
        let a4 = preset("alternating:4");
        assert_eq!(a4.center(), vec![0]);
        assert_eq!(preset("symmetric:1").order(), 1);
        assert_eq!(preset("alternating:1").order(), 1);
    }
}
