//! Homology of small flag triangulations.

use cartk::homology::{all_subsets, boundary_matrices, reduced_homology, smith_normal_form};
use cartk::{AbelianGroup, FlagComplex};

/// The six-vertex real projective plane.
const RP2: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 3, 4],
    [1, 4, 5],
    [1, 5, 6],
    [1, 2, 6],
    [2, 3, 5],
    [2, 4, 5],
    [2, 4, 6],
    [3, 4, 6],
    [3, 5, 6],
];

/// Barycentric subdivision of a 2-complex given by its triangles: one vertex
/// per face, edges between a face and its proper subfaces.
fn barycentric(triangles: &[[usize; 3]]) -> FlagComplex {
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for t in triangles {
        for sub in 1..8u32 {
            let f: Vec<usize> = (0..3).filter(|b| sub >> b & 1 == 1).map(|b| t[b]).collect();
            if !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    let mut edges = Vec::new();
    for (a, fa) in faces.iter().enumerate() {
        for (b, fb) in faces.iter().enumerate() {
            if fa.len() < fb.len() && fa.iter().all(|v| fb.contains(v)) {
                edges.push((a + 1, b + 1));
            }
        }
    }
    FlagComplex::new(faces.len(), edges).unwrap()
}

#[test]
fn projective_plane_is_a_closed_surface() {
    for i in 1..=6 {
        for j in i + 1..=6 {
            let n = RP2.iter().filter(|t| t.contains(&i) && t.contains(&j)).count();
            assert_eq!(n, 2, "edge {i}{j}");
        }
    }
}

#[test]
fn subdivided_projective_plane() {
    let k = barycentric(&RP2);
    assert_eq!(k.vertex_count(), 31);
    assert_eq!(k.triangles(k.vertices()).len(), 60);
    let all = k.vertices();
    assert_eq!(reduced_homology(&k, all, 1).unwrap(), AbelianGroup::cyclic(2));
    assert!(reduced_homology(&k, all, 0).unwrap().is_trivial());
}

#[test]
fn subdivided_triangle_and_circle() {
    // A disk: contractible.
    let disk = barycentric(&[[1, 2, 3]]);
    assert!(reduced_homology(&disk, disk.vertices(), 1).unwrap().is_trivial());
    for m in 4..=12 {
        let c = FlagComplex::cycle(m).unwrap();
        assert_eq!(reduced_homology(&c, c.vertices(), 1).unwrap(), AbelianGroup::free(1));
    }
}

#[test]
fn one_skeleton_rank() {
    let k = barycentric(&RP2);
    let (d1, d2) = boundary_matrices(&k, k.vertices());
    let r1 = smith_normal_form(&d1).len();
    let r2 = smith_normal_form(&d2).len();
    assert_eq!(r1, k.vertex_count() - 1);
    // Euler characteristic of RP2 is 1.
    assert_eq!(k.vertex_count() as i64 - d1.cols() as i64 + d2.cols() as i64, 1);
    assert_eq!(d1.cols() - r1 - r2, 0);
}

#[test]
fn full_subcomplexes_of_the_octahedron() {
    let edges = (1..=6usize)
        .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
        .filter(|&(i, j)| j != i + 3);
    let oct = FlagComplex::new(6, edges).unwrap();
    let rows = all_subsets(&oct).unwrap();
    for r in rows {
        // Antipodal pairs are the only disconnected sets; squares are the only 1-cycles.
        let pairs = (1..=3).filter(|&i| r.set.contains(i) && r.set.contains(i + 3)).count();
        let expect_h0 = usize::from(r.set.len() == 2 && pairs == 1);
        let expect_h1 = usize::from(r.set.len() == 4 && pairs == 2);
        assert_eq!(r.h0.free_rank, expect_h0, "{}", r.set);
        assert_eq!(r.h1.free_rank, expect_h1, "{}", r.set);
        assert!(r.h1.invariant_factors.is_empty());
    }
}
