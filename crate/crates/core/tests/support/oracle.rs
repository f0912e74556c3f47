//! Reference isomorphism enumeration, independent of the search engine.
//!
//! `isomorphisms` walks every bijection in lexicographic order of its image
//! sequence and discards a partial bijection only once some product whose
//! three elements are all assigned is violated. It uses no signatures, no
//! identity seeding and no propagation. `isomorphisms_unpruned` tests every
//! one of the n! bijections in full and is used to validate the pruned
//! walk on small tables.

#![allow(dead_code)]

use gyrogroup::OpTable;

pub fn isomorphisms(a: &OpTable, b: &OpTable) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if a.size() != b.size() {
        return out;
    }
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    walk(a, b, 0, &mut map, &mut used, &mut out, usize::MAX);
    out
}

pub fn first_isomorphism(a: &OpTable, b: &OpTable) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    walk(a, b, 0, &mut map, &mut used, &mut out, 1);
    out.pop()
}

fn consistent(a: &OpTable, b: &OpTable, map: &[usize], i: usize) -> bool {
    for x in 0..=i {
        for z in 0..=i {
            let p = a.op(x, z);
            if p > i || (x != i && z != i && p != i) {
                continue;
            }
            if map[p] != b.op(map[x], map[z]) {
                return false;
            }
        }
    }
    true
}

fn walk(
    a: &OpTable,
    b: &OpTable,
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    let n = a.size();
    if i == n {
        out.push(map.clone());
        return;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        map[i] = y;
        used[y] = true;
        if consistent(a, b, map, i) {
            walk(a, b, i + 1, map, used, out, limit);
        }
        used[y] = false;
        map[i] = usize::MAX;
        if out.len() >= limit {
            return;
        }
    }
}

/// Every bijection, fully checked. Only for small `n`.
pub fn isomorphisms_unpruned(a: &OpTable, b: &OpTable) -> Vec<Vec<usize>> {
    let n = a.size();
    assert!(n <= 8, "n! enumeration is for small tables");
    if b.size() != n {
        return Vec::new();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let hom = (0..n).all(|x| (0..n).all(|z| perm[a.op(x, z)] == b.op(perm[x], perm[z])));
        if hom {
            out.push(perm.clone());
        }
        // next permutation in lexicographic order
        let Some(k) = (1..n).rev().find(|&k| perm[k - 1] < perm[k]) else {
            break;
        };
        let j = (k..n).rev().find(|&j| perm[j] > perm[k - 1]).unwrap();
        perm.swap(k - 1, j);
        perm[k..].reverse();
    }
    out
}
