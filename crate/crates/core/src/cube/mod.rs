//! The cube of resolutions: generators and gradings, even and odd edge
//! maps, the odd sign obstruction, edge assignments and the four Khovanov
//! complexes.

mod complex;
mod edge_assignment;
mod exterior;
mod khcube;
mod obstruction;

pub use complex::{
    build_complex, complex_of_cube, complex_of_word, homology_of_word, standard_sign, KhComplex, Theory,
};
pub use edge_assignment::{
    solve_edge_assignment, solve_edge_assignment_dense, symmetrize, vertex_string, EdgeAssignment,
};
pub(crate) use exterior::sort_descending;
pub use khcube::{EdgeMap, KhGenerator, KhovanovCube, Surgery, MAX_CUBE_CROSSINGS};
pub use obstruction::{face_type, face_types, obstruction_cocycle, FaceTypes, Flavor, Obstruction};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{AnnularWord, Diagram};
    use crate::homology::Ring;

    fn word(s: &str) -> AnnularWord {
        AnnularWord::parse(s).unwrap()
    }

    fn trefoil() -> AnnularWord {
        word("strands 2\nx+ 1\nx+ 1\nx+ 1\n")
    }

    #[test]
    fn trefoil_base_grading() {
        let cube = KhovanovCube::new(Diagram::new(trefoil()).unwrap()).unwrap();
        let g = cube.grading(KhGenerator { vertex: 0, label: 0 });
        assert_eq!((g.h, g.q), (0, 5));
        assert_eq!(g.k, 2);
    }

    #[test]
    fn trefoil_khovanov_over_q() {
        let kh = homology_of_word(&trefoil(), Theory::Even, Ring::Rationals).unwrap();
        let nz: Vec<_> = kh.nonzero().into_iter().map(|(h, q, _, r)| (h, q, r)).collect();
        assert_eq!(nz, vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
    }

    #[test]
    fn trefoil_integral_torsion() {
        let kh = homology_of_word(&trefoil(), Theory::Even, Ring::Integers).unwrap();
        let tors: Vec<_> = kh
            .entries
            .iter()
            .filter(|(_, e)| !e.torsion.is_empty())
            .map(|(k, e)| (*k, e.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()))
            .collect();
        assert_eq!(tors, vec![((3, 7, 0), vec!["2".to_string()])]);
    }

    #[test]
    fn trefoil_over_f2() {
        let kh = homology_of_word(&trefoil(), Theory::Even, Ring::Prime(2)).unwrap();
        assert_eq!(kh.total_rank(), 6);
    }

    #[test]
    fn unknot_diagrams() {
        for w in ["strands 0\nu 1\nn 1\n", "strands 1\n", "strands 0\nu 1\nx+ 1\nn 1\n", "strands 0\nu 1\nx- 1\nn 1\n"] {
            for t in [Theory::Even, Theory::Odd] {
                let kh = homology_of_word(&word(w), t, Ring::Rationals).unwrap();
                let nz: Vec<_> = kh.nonzero().into_iter().map(|(h, q, _, r)| (h, q, r)).collect();
                assert_eq!(nz, vec![(0, -1, 1), (0, 1, 1)], "{w} {t}");
            }
        }
    }

    #[test]
    fn empty_diagram() {
        let kh = homology_of_word(&word("strands 0\n"), Theory::Even, Ring::Integers).unwrap();
        assert_eq!(kh.nonzero(), vec![(0, 0, 0, 1)]);
    }

    #[test]
    fn hopf_link() {
        let kh = homology_of_word(&word("strands 2\nx+ 1\nx+ 1\n"), Theory::Even, Ring::Rationals).unwrap();
        let nz: Vec<_> = kh.nonzero().into_iter().map(|(h, q, _, r)| (h, q, r)).collect();
        assert_eq!(nz, vec![(0, 0, 1), (0, 2, 1), (2, 4, 1), (2, 6, 1)]);
    }

    #[test]
    fn odd_trefoil_is_two_copies_of_reduced() {
        // thin knot: reduced odd homology has rank det = 3 on one diagonal
        let kh = homology_of_word(&trefoil(), Theory::Odd, Ring::Rationals).unwrap();
        let nz: Vec<_> = kh.nonzero().into_iter().map(|(h, q, _, r)| (h, q, r)).collect();
        assert_eq!(nz, vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (2, 7, 1), (3, 7, 1), (3, 9, 1)]);
    }

    #[test]
    fn squares_vanish_in_all_theories() {
        for w in [trefoil(), word("strands 3\nx+ 1\nx- 2\nx+ 1\nx- 2\n"), word("strands 1\nu 2\nx+ 1\nx+ 1\nn 2\n")] {
            let cube = KhovanovCube::new(Diagram::new(w).unwrap()).unwrap();
            for t in Theory::ALL {
                let c = complex_of_cube(&cube, t, Flavor::X).unwrap();
                assert!(c.complex.squares_to_zero(None), "{t}");
                assert!(c.complex.respects_gradings(), "{t}");
            }
        }
    }

    #[test]
    fn edge_assignment_solvers_agree_up_to_twist() {
        let w = word("strands 3\nx+ 1\nx- 2\nx+ 1\nx- 2\n");
        let cube = KhovanovCube::new(Diagram::new(w).unwrap()).unwrap();
        for flavor in [Flavor::X, Flavor::Y] {
            let obs = obstruction_cocycle(&cube, flavor).unwrap();
            obs.check_cocycle().unwrap();
            let a = solve_edge_assignment(&obs).unwrap();
            let b = solve_edge_assignment_dense(&obs).unwrap();
            assert!(a.solves(&obs));
            assert!(b.solves(&obs));
            assert!(a.twisted(5).solves(&obs));
        }
    }
}
