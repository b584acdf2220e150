mod common;

use std::collections::BTreeMap;

use common::oracle::Oracle;
use common::{word, CORPUS};
use khperiodic::cube::{homology_of_word, Theory};
use khperiodic::homology::Ring;

fn library(text: &str, theory: Theory, ring: Ring) -> BTreeMap<(i32, i32, i32), usize> {
    let r = homology_of_word(&word(text), theory, ring).unwrap();
    r.nonzero()
        .into_iter()
        .map(|(h, q, k, d)| ((h, q, if theory.is_annular() { k } else { 0 }), d))
        .collect()
}

/// Words the oracle can read signs from: no cups or caps next to crossings.
fn braid_like(text: &str) -> bool {
    !(text.contains('x') && (text.contains("\nu ") || text.contains("\nn ")))
}

#[test]
fn even_homology_matches_the_oracle() {
    for text in CORPUS.iter().filter(|t| braid_like(t)) {
        let o = Oracle::parse(text);
        if text.matches('x').count() > 6 {
            continue;
        }
        for (ring, field) in [(Ring::Rationals, None), (Ring::Prime(2), Some(2)), (Ring::Prime(3), Some(3))] {
            for (theory, annular) in [(Theory::Even, false), (Theory::AnnularEven, true)] {
                assert_eq!(library(text, theory, ring), o.homology(field, annular), "{theory} over {ring}: {text}");
            }
        }
    }
}

#[test]
fn oracle_reproduces_known_trefoil() {
    let o = Oracle::parse("strands 2\nx+ 1\nx+ 1\nx+ 1\n");
    let q: Vec<(i32, i32)> = o.homology(None, false).keys().map(|&(h, q, _)| (h, q)).collect();
    assert_eq!(q, vec![(0, 1), (0, 3), (2, 5), (3, 9)]);
    assert_eq!(o.homology(Some(2), false).values().sum::<usize>(), 6);
}

#[test]
fn odd_and_even_agree_mod_two() {
    for text in CORPUS {
        for (odd, even) in [(Theory::Odd, Theory::Even), (Theory::AnnularOdd, Theory::AnnularEven)] {
            assert_eq!(library(text, odd, Ring::Prime(2)), library(text, even, Ring::Prime(2)), "{text}");
        }
    }
}
