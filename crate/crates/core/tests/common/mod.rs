#![allow(dead_code)]

pub mod oracle;

use khperiodic::diagram::AnnularWord;

/// Small annular words: braid closures on two to four strands, and words
/// with cups and caps, some away from the axis entirely.
pub const CORPUS: &[&str] = &[
    "strands 0\nu 1\nn 1\n",
    "strands 1\n",
    "strands 2\n",
    "strands 2\nx+ 1\n",
    "strands 2\nx- 1\n",
    "strands 2\nx+ 1\nx+ 1\n",
    "strands 2\nx+ 1\nx- 1\n",
    "strands 2\nx+ 1\nx+ 1\nx+ 1\n",
    "strands 2\nx- 1\nx- 1\nx- 1\n",
    "strands 2\nx+ 1\nx+ 1\nx+ 1\nx+ 1\n",
    "strands 2\nx+ 1\nx+ 1\nx+ 1\nx+ 1\nx+ 1\n",
    "strands 2\nx+ 1\nx- 1\nx+ 1\n",
    "strands 3\nx+ 1\nx+ 2\n",
    "strands 3\nx+ 1\nx- 2\n",
    "strands 3\nx+ 1\nx+ 2\nx+ 1\n",
    "strands 3\nx+ 1\nx- 2\nx+ 1\n",
    "strands 3\nx+ 1\nx- 2\nx+ 1\nx- 2\n",
    "strands 3\nx+ 1\nx+ 1\nx+ 2\n",
    "strands 3\nx+ 1\nx+ 2\nx+ 1\nx+ 2\n",
    "strands 3\nx+ 1\nx+ 1\nx- 2\nx- 2\n",
    "strands 3\nx- 1\nx+ 2\nx- 1\nx+ 2\nx- 1\nx+ 2\n",
    "strands 3\nx+ 1\nx+ 2\nx+ 1\nx+ 2\nx+ 1\nx+ 2\n",
    "strands 3\nx+ 1\nx+ 1\nx+ 1\nx+ 2\nx+ 2\nx+ 2\nx+ 2\nx+ 2\n",
    "strands 4\nx+ 1\nx+ 2\nx+ 3\n",
    "strands 4\nx+ 1\nx- 2\nx+ 3\n",
    "strands 4\nx+ 1\nx+ 3\nx- 2\nx+ 1\n",
    "strands 4\nx+ 1\nx+ 2\nx+ 3\nx+ 1\nx+ 2\nx+ 3\n",
    "strands 0\nu 1\nx+ 1\nx+ 1\nn 1\n",
    "strands 0\nu 1\nu 3\nx+ 2\nx+ 2\nn 3\nn 1\n",
    "strands 0\nu 1\nu 3\nx+ 2\nx- 2\nn 3\nn 1\n",
    "strands 1\nu 2\nx+ 1\nn 2\n",
    "strands 1\nu 2\nx- 1\nn 2\n",
    "strands 1\nu 2\nx+ 1\nx+ 2\nn 1\n",
    "strands 2\nu 3\nx+ 2\nx+ 1\nn 2\n",
    "strands 2\nx+ 1\nn 1\nu 1\nx- 1\n",
    "strands 0\nu 1\nx+ 1\nx+ 1\nx- 1\nn 1\n",
    "strands 2\nu 2\nx+ 1\nx+ 3\nx+ 2\nn 2\n",
];

pub fn word(s: &str) -> AnnularWord {
    AnnularWord::parse(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

pub fn corpus() -> Vec<AnnularWord> {
    CORPUS.iter().map(|s| word(s)).collect()
}

/// Periods used for the cover of a base word with `n` crossings; keeps the
/// covers small enough that every check runs in seconds.
pub fn periods(n: usize) -> Vec<u32> {
    [2u32, 3, 5].into_iter().filter(|&p| (p as usize) * n <= cover_budget(p)).collect()
}

fn cover_budget(p: u32) -> usize {
    match p {
        2 => 10,
        3 => 9,
        _ => 10,
    }
}

/// Covers whose resolution cube has more generators than this are left out.
pub const MAX_COVER_GENERATORS: usize = 250_000;

/// `(base word index, p)` for every corpus cover.
pub fn corpus_covers() -> Vec<(usize, u32)> {
    corpus()
        .iter()
        .enumerate()
        .flat_map(|(i, w)| periods(w.crossing_count()).into_iter().map(move |p| (i, p)))
        .filter(|&(i, p)| {
            let cover = khperiodic::periodic::PeriodicPair::new(&word(CORPUS[i]), p).unwrap().cover;
            cover.generator_count() <= MAX_COVER_GENERATORS
        })
        .collect()
}
