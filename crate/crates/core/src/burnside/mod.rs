//! Decorated Burnside functors on the cube: correspondences and their
//! composition, face matchings and coherence, totalization, the rotation
//! action of a cover and fixed-point functors.

mod action;
mod correspondence;
mod fixed;
mod functor;

pub use action::{ActionReport, ExternalAction};
pub use correspondence::{compose, compose_indexed, isomorphic, DecoratedCorrespondence, Element};
pub use fixed::{fixed_point_functor, FixedPointFunctor, Subgroup};
pub use functor::{BurnsideCubeFunctor, CoherenceReport, Degree, FaceWitness, Matching};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{
        build_complex, obstruction_cocycle, solve_edge_assignment, standard_sign, EdgeAssignment, Flavor, KhGenerator,
        KhovanovCube, Theory,
    };
    use crate::diagram::{AnnularWord, Diagram};
    use crate::periodic::{invariant_lifts, LiftOrder, PeriodicPair};

    fn word(s: &str) -> AnnularWord {
        AnnularWord::parse(s).unwrap()
    }

    fn cube(s: &str) -> KhovanovCube {
        KhovanovCube::new(Diagram::new(word(s)).unwrap()).unwrap()
    }

    fn eps(c: &KhovanovCube) -> EdgeAssignment {
        solve_edge_assignment(&obstruction_cocycle(c, Flavor::X).unwrap()).unwrap()
    }

    const THREE: [&str; 3] = [
        "strands 2\nx+ 1\nx+ 1\nx+ 1\n",
        "strands 3\nx+ 1\nx- 2\nx+ 1\n",
        "strands 0\nu 1\nx+ 1\nx+ 1\nx- 1\nn 1\n",
    ];

    #[test]
    fn totalization_recovers_both_complexes() {
        for w in THREE {
            let c = cube(w);
            let e = eps(&c);
            let odd = BurnsideCubeFunctor::khovanov(&c, &e, true, false).unwrap();
            let even = build_complex(&c, Theory::Even, None).unwrap();
            let oddc = build_complex(&c, Theory::Odd, Some(&e)).unwrap();
            assert_eq!(odd.totalize(Degree::Zero).triplets(), even.complex.triplets());
            assert_eq!(odd.totalize(Degree::Identity).triplets(), oddc.complex.triplets());
            let ann = BurnsideCubeFunctor::khovanov(&c, &e, false, true).unwrap();
            let anc = build_complex(&c, Theory::AnnularEven, None).unwrap();
            assert_eq!(ann.totalize(Degree::Identity).triplets(), anc.complex.triplets());
        }
    }

    #[test]
    fn empty_functor_totalizes_to_one_generator() {
        let c = cube("strands 0\n");
        let f = BurnsideCubeFunctor::khovanov(&c, &EdgeAssignment::constant(0), true, false).unwrap();
        let t = f.totalize(Degree::Identity);
        assert_eq!((t.len(), t.nnz()), (1, 0));
    }

    #[test]
    fn edge_composite_is_matrix_product() {
        // merge then split on a two-crossing diagram
        let c = cube("strands 2\nx+ 1\nx+ 1\n");
        let e = eps(&c);
        let f = BurnsideCubeFunctor::khovanov(&c, &e, true, false).unwrap();
        let kc = build_complex(&c, Theory::Odd, Some(&e)).unwrap();
        let at = |v: u32, x: u32| kc.index(KhGenerator { vertex: v, label: x });
        let counts = compose(f.edge(0b01, 0), f.edge(0b11, 1)).unwrap().signed_counts();
        // the complex carries standard signs, the functor does not
        let signs = (standard_sign(0b00, 0) * standard_sign(0b01, 1)) as i64;
        for x in 0..f.size(0b11) as u32 {
            for z in 0..f.size(0b00) as u32 {
                let want: i64 = (0..f.size(0b01) as u32)
                    .map(|y| kc.complex.entry(at(0b11, x), at(0b01, y)) * kc.complex.entry(at(0b01, y), at(0b00, z)))
                    .sum();
                assert_eq!(*counts.get(&(x, z)).unwrap_or(&0), want * signs);
            }
        }
    }

    #[test]
    fn coherence_of_khovanov_functors() {
        for w in THREE {
            let c = cube(w);
            let e = eps(&c);
            for decorated in [false, true] {
                for annular in [false, true] {
                    let f = BurnsideCubeFunctor::khovanov(&c, &e, decorated, annular).unwrap();
                    let r = f.check_coherence();
                    assert!(r.passed(), "{w}: {:?}", r.failure);
                    assert_eq!(r.cubes, 1);
                }
            }
        }
        let c = cube("strands 2\nx+ 1\nx- 1\n");
        let r = BurnsideCubeFunctor::khovanov(&c, &eps(&c), true, false).unwrap().check_coherence();
        assert!(r.passed());
        assert_eq!(r.cubes, 0);
    }

    #[test]
    fn ladybug_matching_is_the_sign_preserving_one() {
        // one circle with two interleaved arcs at the bottom vertex
        let c = cube("strands 2\nx+ 1\nx- 1\n");
        let e = eps(&c);
        let f = BurnsideCubeFunctor::khovanov(&c, &e, true, false).unwrap();
        let mut ladybugs = 0;
        for x in 0..f.size(0b11) as u32 {
            for z in f.face_bottoms(0b11, 0, 1, x) {
                let m = f.face_matching(0b11, 0, 1, x, z).unwrap();
                if m.len() == 2 {
                    ladybugs += 1;
                    // exactly one of the two pairings preserves signs
                    let swapped = vec![(m[0].0, m[1].1), (m[1].0, m[0].1)];
                    assert_ne!(m, swapped);
                }
            }
        }
        assert!(ladybugs > 0);
    }

    #[test]
    fn swapped_matching_breaks_a_hexagon() {
        let c = cube("strands 2\nx+ 1\nx- 1\nx+ 1\n");
        let e = eps(&c);
        let mut f = BurnsideCubeFunctor::khovanov(&c, &e, true, false).unwrap();
        assert!(f.check_coherence().passed());
        let mut found = None;
        'outer: for u in 0..8u32 {
            for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
                if u >> c1 & 1 == 0 || u >> c2 & 1 == 0 {
                    continue;
                }
                for x in 0..f.size(u) as u32 {
                    for z in f.face_bottoms(u, c1, c2, x) {
                        if f.face_matching(u, c1, c2, x, z).unwrap().len() == 2 {
                            found = Some((u, c1, c2));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let (u, c1, c2) = found.expect("a ladybug face");
        f.inject_swap(u, c1, c2);
        let r = f.check_coherence();
        assert!(!r.passed());
    }

    fn action_report(w: &str, p: u32, odd: bool) -> ActionReport {
        let pair = PeriodicPair::new(&word(w), p).unwrap();
        let e = if odd {
            pair.equivariant_edge_assignment(Flavor::X).unwrap()
        } else {
            eps(&pair.cover)
        };
        let f = BurnsideCubeFunctor::khovanov(&pair.cover, &e, odd, false).unwrap();
        ExternalAction::new(&f, &pair).unwrap().verify(&f)
    }

    #[test]
    fn external_actions() {
        assert!(action_report("strands 2\nx+ 1\n", 2, false).passed());
        let r = action_report("strands 2\nx+ 1\n", 3, true);
        assert!(r.passed(), "{r:?}");
        assert!(r.fixed_objects > 0);
        assert!(action_report("strands 3\nx+ 1\nx- 2\n", 3, true).passed());
    }

    #[test]
    fn non_equivariant_assignment_is_detected() {
        let pair = PeriodicPair::new(&word("strands 2\nx+ 1\nx- 1\n"), 3).unwrap();
        let obs = obstruction_cocycle(&pair.cover, Flavor::X).unwrap();
        let e = solve_edge_assignment(&obs).unwrap().twisted(3);
        assert!(!e.is_invariant(pair.rotation()));
        let f = BurnsideCubeFunctor::khovanov(&pair.cover, &e, true, false).unwrap();
        let r = ExternalAction::new(&f, &pair).unwrap().verify(&f);
        assert!(r.e1.is_some());
    }

    #[test]
    fn fixed_functor_is_quotient_annular_functor() {
        for w in ["strands 2\nx+ 1\n", "strands 2\nx+ 1\nx- 1\n", "strands 0\nu 1\nx+ 1\nn 1\n", "strands 3\nx+ 1\nx- 2\n"] {
            for (p, odd) in [(2, false), (3, false), (3, true)] {
                let pair = PeriodicPair::new(&word(w), p).unwrap();
                let (up, down) = if odd {
                    let e = pair.equivariant_edge_assignment(Flavor::X).unwrap();
                    let d = pair.quotient_edge_assignment(&e);
                    (e, d)
                } else {
                    (eps(&pair.cover), eps(&pair.base))
                };
                let f = BurnsideCubeFunctor::khovanov(&pair.cover, &up, odd, false).unwrap();
                let act = ExternalAction::new(&f, &pair).unwrap();
                let fx = fixed_point_functor(&f, &act, &pair, Subgroup::Whole).unwrap();
                let q = BurnsideCubeFunctor::khovanov(&pair.base, &down, odd, true).unwrap();
                let lifts = invariant_lifts(&pair, LiftOrder::Ascending);
                assert_eq!(fx.compare_with_quotient(&f, &q, &pair, &lifts), None, "{w} p={p} odd={odd}");
            }
        }
    }

    #[test]
    fn trivial_subgroup_gives_the_functor() {
        let pair = PeriodicPair::new(&word("strands 2\nx+ 1\n"), 3).unwrap();
        let f = BurnsideCubeFunctor::khovanov(&pair.cover, &eps(&pair.cover), false, false).unwrap();
        let act = ExternalAction::new(&f, &pair).unwrap();
        let fx = fixed_point_functor(&f, &act, &pair, Subgroup::Trivial).unwrap();
        assert_eq!(fx.functor.total_size(), f.total_size());
    }
}
