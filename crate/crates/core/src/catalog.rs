//! Small groups, complexes and models used by tests, examples and the CLI.

use std::collections::BTreeMap;

use crate::complex::{Cell, CwComplex, GCWComplex};
use crate::cover::{CoverModel, ExtensionData};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

fn perm_group(degree: usize, gens: Vec<Vec<usize>>) -> FiniteGroup {
    FiniteGroup::from_permutation_generators(degree, &gens).expect("catalog generators")
}

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (k, &a) in points.iter().enumerate() {
        p[a] = points[(k + 1) % points.len()];
    }
    p
}

/// `S_n` on `{0, …, n−1}`.
pub fn symmetric(n: usize) -> FiniteGroup {
    if n < 2 {
        return FiniteGroup::trivial();
    }
    let all: Vec<usize> = (0..n).collect();
    perm_group(n, vec![cycle(n, &[0, 1]), cycle(n, &all)])
}

/// `A_n`, generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> FiniteGroup {
    if n < 3 {
        return FiniteGroup::trivial();
    }
    perm_group(n, (2..n).map(|k| cycle(n, &[0, 1, k])).collect())
}

/// `Z_2 × Z_2` with `r = 1`, `s = 2`, `rs = 3`.
pub fn klein_four() -> FiniteGroup {
    let z2 = FiniteGroup::cyclic(2);
    FiniteGroup::direct_product(&z2, &z2)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3, "dihedral group needs n ≥ 3");
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    perm_group(n, vec![rot, refl])
}

/// Parses names such as `C6`, `S4`, `A5`, `D5`, `V4` and products `S3xC3`.
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let mut factors = name.split(['x', '×']).map(str::trim);
    let first = factors.next().ok_or_else(|| Error::InvalidInput("empty group name".into()))?;
    let mut g = single_group(first)?;
    for f in factors {
        g = FiniteGroup::direct_product(&g, &single_group(f)?);
    }
    Ok(g)
}

fn single_group(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::InvalidInput(format!("unknown group name {name:?}"));
    if name == "V4" {
        return Ok(klein_four());
    }
    let (head, tail) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" | "Z" if n >= 1 => Ok(FiniteGroup::cyclic(n)),
        "S" if n >= 1 => Ok(symmetric(n)),
        "A" if n >= 1 => Ok(alternating(n)),
        "D" if n >= 3 => Ok(dihedral(n)),
        _ => Err(bad()),
    }
}

/// Named groups of order at most 100 whose order is not a prime power.
pub fn non_prime_power_groups() -> Vec<(String, FiniteGroup)> {
    let mut names: Vec<String> = Vec::new();
    for n in [6usize, 10, 12, 14, 15, 18, 20, 21, 22, 24, 26, 28, 30, 33, 35, 36, 42, 60, 77, 100] {
        names.push(format!("C{n}"));
    }
    for n in [3usize, 5, 6, 7, 9, 10, 12, 15, 25, 50] {
        names.push(format!("D{n}"));
    }
    for n in ["S3", "S4", "A4", "A5", "S3xC2xC2", "S3xC3", "S3xS3", "A4xC2", "A4xC3", "D5xC3", "V4xC3", "S4xC2", "D3xC5"] {
        names.push(n.to_string());
    }
    names
        .into_iter()
        .map(|n| {
            let g = group_by_name(&n).expect("catalog name");
            (n, g)
        })
        .collect()
}

fn complex(cells: &[(u64, usize)], boundary: Vec<(u64, Vec<(u64, i64)>)>) -> CwComplex {
    let cells = cells.iter().map(|&(id, dim)| Cell { id, dim }).collect();
    CwComplex::new(cells, boundary).expect("catalog complex")
}

pub fn point() -> CwComplex {
    complex(&[(0, 0)], vec![])
}

/// Vertices `0`, `1`; edge `2` from `0` to `1`.
pub fn interval() -> CwComplex {
    complex(&[(0, 0), (1, 0), (2, 1)], vec![(2, vec![(0, -1), (1, 1)])])
}

/// Vertices `0`, `1`; edge `2` from `0` to `1`, edge `3` back.
pub fn circle() -> CwComplex {
    complex(
        &[(0, 0), (1, 0), (2, 1), (3, 1)],
        vec![(2, vec![(0, -1), (1, 1)]), (3, vec![(1, -1), (0, 1)])],
    )
}

/// Circle with both edges running from `0` to `1`.
pub fn bigon() -> CwComplex {
    complex(
        &[(0, 0), (1, 0), (2, 1), (3, 1)],
        vec![(2, vec![(0, -1), (1, 1)]), (3, vec![(0, -1), (1, 1)])],
    )
}

/// Bigon with two hemispheres `4 = e2 − e3`, `5 = e3 − e2`.
pub fn sphere2() -> CwComplex {
    complex(
        &[(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)],
        vec![
            (2, vec![(0, -1), (1, 1)]),
            (3, vec![(0, -1), (1, 1)]),
            (4, vec![(2, 1), (3, -1)]),
            (5, vec![(3, 1), (2, -1)]),
        ],
    )
}

/// One vertex, one loop, one disk attached along twice the loop.
pub fn projective_plane() -> CwComplex {
    complex(&[(0, 0), (1, 1), (2, 2)], vec![(2, vec![(1, 2)])])
}

/// Triangle: vertices `0..3`, edges `3: 0→1`, `4: 1→2`, `5: 2→0`, face `6`.
pub fn disk() -> CwComplex {
    complex(
        &[(0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1), (6, 2)],
        vec![
            (3, vec![(0, -1), (1, 1)]),
            (4, vec![(1, -1), (2, 1)]),
            (5, vec![(2, -1), (0, 1)]),
            (6, vec![(3, 1), (4, 1), (5, 1)]),
        ],
    )
}

fn with_action(x: CwComplex, g: FiniteGroup, entries: BTreeMap<usize, Vec<(u64, u64, i8)>>) -> GCWComplex {
    GCWComplex::new(x, g, &entries).expect("catalog action")
}

/// `Z_2` reflecting the bigon: both vertices fixed, edges swapped.
pub fn conjugation_circle() -> GCWComplex {
    with_action(bigon(), FiniteGroup::cyclic(2), BTreeMap::from([(1, vec![(2, 3, 1), (3, 2, 1)])]))
}

/// `Z_2` rotating the circle by a half turn.
pub fn free_z2_circle() -> GCWComplex {
    with_action(
        circle(),
        FiniteGroup::cyclic(2),
        BTreeMap::from([(1, vec![(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)])]),
    )
}

/// Cayley graph of `Z_2 × Z_2` for the generator `r`: vertex `g`, edge
/// `4 + g` from `g` to `g·r`, with `Γ` acting by left multiplication.
pub fn free_gamma_circles() -> GCWComplex {
    let g = klein_four();
    let mut cells: Vec<(u64, usize)> = g.elements().map(|x| (x as u64, 0)).collect();
    cells.extend(g.elements().map(|x| (4 + x as u64, 1)));
    let boundary = g
        .elements()
        .map(|x| (4 + x as u64, vec![(x as u64, -1), (g.mul(x, 1) as u64, 1)]))
        .collect();
    let x = complex(&cells, boundary);
    let entries = g
        .elements()
        .skip(1)
        .map(|h| {
            let row = g
                .elements()
                .flat_map(|x| {
                    let y = g.mul(h, x) as u64;
                    [(x as u64, y, 1), (4 + x as u64, 4 + y, 1)]
                })
                .collect();
            (h, row)
        })
        .collect();
    with_action(x, g, entries)
}

/// Square `v_k → v_{k+1}` (edge `4 + k`) under `Z_2 × Z_2`: `r` turns by a
/// half, `s` reflects through `v0` and `v2`. The kernel `⟨r⟩` acts freely
/// and the base is the conjugation circle.
pub fn square_cover() -> CoverModel {
    let cells: Vec<(u64, usize)> = (0..4).map(|k| (k, 0)).chain((4..8).map(|k| (k, 1))).collect();
    let boundary = (0..4u64).map(|k| (4 + k, vec![(k, -1), ((k + 1) % 4, 1)])).collect();
    let x = complex(&cells, boundary);
    let r: Vec<(u64, u64, i8)> =
        (0..4u64).flat_map(|k| [(k, (k + 2) % 4, 1), (4 + k, 4 + (k + 2) % 4, 1)]).collect();
    let s: Vec<(u64, u64, i8)> =
        (0..4u64).flat_map(|k| [(k, (4 - k) % 4, 1), (4 + k, 4 + (3 - k), -1)]).collect();
    let cover = with_action(x, klein_four(), BTreeMap::from([(1, r), (2, s)]));
    let e = ExtensionData::new(klein_four(), &[0, 1], FiniteGroup::cyclic(2), vec![0, 0, 1, 1])
        .expect("square cover extension");
    CoverModel::new(cover, e).expect("square cover")
}
