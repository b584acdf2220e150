use serde::{Deserialize, Serialize};

use super::layout::trace_all;
use super::resolution::{arc_endpoints, Junction};
use super::Diagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LadybugType {
    X,
    Y,
}

impl LadybugType {
    pub fn swap(self) -> Self {
        match self {
            LadybugType::X => LadybugType::Y,
            LadybugType::Y => LadybugType::X,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceType {
    /// Anticommuting face.
    A,
    /// Commuting face.
    C,
    X,
    Y,
}

/// Surgery arc of one crossing in the base resolution of a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceArc {
    pub crossing: usize,
    pub tail_circle: usize,
    pub head_circle: usize,
}

/// The base resolution of a 2-face with the two surgery arcs drawn on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceConfiguration {
    /// Base vertex; both face crossings are 0 here.
    pub vertex: u32,
    pub arcs: [FaceArc; 2],
    /// Circles of the base resolution that meet an arc.
    pub active_circles: Vec<usize>,
    pub ladybug: bool,
}

fn check_face(d: &Diagram, w: u32, c1: usize, c2: usize) -> Result<()> {
    let n = d.crossings();
    if c1 >= n || c2 >= n || c1 == c2 {
        return Err(Error::Invalid(format!(
            "face crossings ({c1}, {c2}) invalid for {n} crossings"
        )));
    }
    if w >> c1 & 1 == 1 || w >> c2 & 1 == 1 {
        return Err(Error::Invalid(format!(
            "base vertex {w:#b} must be 0 at crossings {c1} and {c2}"
        )));
    }
    Ok(())
}

fn face_arcs(d: &Diagram, c1: usize, c2: usize) -> [(Junction, Junction); 2] {
    let arcs = d.orientation().arrows.clone();
    let arc = |c: usize| {
        let site = &d.layout.sites[c];
        arc_endpoints(site, site.smoothing(false), arcs[c])
    };
    [arc(c1), arc(c2)]
}

pub fn face_configuration(d: &Diagram, w: u32, c1: usize, c2: usize) -> Result<FaceConfiguration> {
    check_face(d, w, c1, c2)?;
    let res = d.resolve(w);
    let [a1, a2] = face_arcs(d, c1, c2);
    let arc = |c, (t, h): (Junction, Junction)| FaceArc {
        crossing: c,
        tail_circle: res.circle_of_end(t.ends.0),
        head_circle: res.circle_of_end(h.ends.0),
    };
    let arcs = [arc(c1, a1), arc(c2, a2)];
    let mut active: Vec<usize> = arcs
        .iter()
        .flat_map(|a| [a.tail_circle, a.head_circle])
        .collect();
    active.sort_unstable();
    active.dedup();
    let ladybug = active.len() == 1 && interleaved(d, w, c1, c2)?;
    Ok(FaceConfiguration {
        vertex: w,
        arcs,
        active_circles: active,
        ladybug,
    })
}

struct Walk {
    len: usize,
    /// (step, arc on left) for t1, h1, t2, h2
    marks: [(usize, bool); 4],
}

fn walk_marks(d: &Diagram, w: u32, c1: usize, c2: usize) -> Result<Walk> {
    let layout = &d.layout;
    let partner = layout.partner_with(|c| layout.sites[c].smoothing(w >> c & 1 == 1));
    let (owner, traces) = trace_all(layout, &partner);
    let [(t1, h1), (t2, h2)] = face_arcs(d, c1, c2);
    let js = [t1, h1, t2, h2];
    let circle = owner[(t1.ends.0 / 2) as usize];
    if js.iter().any(|j| owner[(j.ends.0 / 2) as usize] != circle) {
        return Err(Error::NotLadybug(format!(
            "arcs of crossings {c1} and {c2} do not lie on one circle"
        )));
    }
    let steps = &traces[circle as usize].steps;
    let mut marks = [(usize::MAX, false); 4];
    for (t, &(_, entry)) in steps.iter().enumerate() {
        let exit = entry ^ 1;
        for (m, j) in js.iter().enumerate() {
            if exit == j.ends.0 || exit == j.ends.1 {
                marks[m] = (t, j.arc_on_left(exit));
            }
        }
    }
    debug_assert!(marks.iter().all(|m| m.0 != usize::MAX));
    Ok(Walk {
        len: steps.len(),
        marks,
    })
}

fn interleaved(d: &Diagram, w: u32, c1: usize, c2: usize) -> Result<bool> {
    let walk = walk_marks(d, w, c1, c2)?;
    let [t1, h1, t2, h2] = walk.marks.map(|m| m.0);
    let between = |x: usize| {
        let (lo, hi) = (t1.min(h1), t1.max(h1));
        lo < x && x < hi
    };
    Ok(between(t2) != between(h2))
}

/// X or Y label of a ladybug face. Walk the circle so that the first arc
/// lies on the left; starting from its tail, the face is X when the next
/// endpoint met is the tail of the second arc.
pub fn classify_ladybug(d: &Diagram, w: u32, c1: usize, c2: usize) -> Result<LadybugType> {
    check_face(d, w, c1, c2)?;
    let walk = walk_marks(d, w, c1, c2)?;
    if !interleaved(d, w, c1, c2)? {
        return Err(Error::NotLadybug(format!(
            "endpoints of crossings {c1} and {c2} are not interleaved"
        )));
    }
    let [(t1, left1), (h1, left1h), (t2, left2), (h2, left2h)] = walk.marks;
    debug_assert_eq!(left1, left1h);
    debug_assert_eq!(left2, left2h);
    debug_assert_ne!(left1, left2);
    let len = walk.len as i64;
    let dist = |x: usize| {
        let raw = x as i64 - t1 as i64;
        let directed = if left1 { raw } else { -raw };
        directed.rem_euclid(len)
    };
    debug_assert!(dist(h1) > dist(t2).min(dist(h2)) && dist(h1) < dist(t2).max(dist(h2)));
    Ok(if dist(t2) < dist(h2) {
        LadybugType::X
    } else {
        LadybugType::Y
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::AnnularWord;
    use proptest::prelude::*;

    const WORDS: &[&str] = &[
        "strands 2\nx+ 1\nx- 1\nx+ 1\n",
        "strands 3\nx+ 1\nx+ 2\nx+ 1\nx+ 2\n",
        "strands 3\nx+ 1\nx- 2\nx+ 1\nx- 2\n",
        "strands 0\nu 1\nx+ 1\nx+ 1\nn 1\n",
    ];

    fn ladybugs(d: &Diagram) -> Vec<(u32, usize, usize)> {
        let n = d.crossings();
        let mut out = Vec::new();
        for w in 0..1u32 << n {
            for c2 in 0..n {
                for c1 in 0..c2 {
                    if w >> c1 & 1 == 0 && w >> c2 & 1 == 0 && face_configuration(d, w, c1, c2).unwrap().ladybug {
                        out.push((w, c1, c2));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sample_words_have_ladybugs() {
        let total: usize = WORDS
            .iter()
            .map(|text| ladybugs(&Diagram::new(AnnularWord::parse(text).unwrap()).unwrap()).len())
            .sum();
        assert!(total > 0);
    }

    proptest! {
        #[test]
        fn reversing_one_arrow_swaps_the_label(word in 0..WORDS.len(), seed in any::<u64>()) {
            let d = Diagram::new(AnnularWord::parse(WORDS[word]).unwrap()).unwrap();
            let n = d.crossings();
            let arrows: Vec<bool> = (0..n).map(|i| seed >> i & 1 == 1).collect();
            let d = d.with_arrows(arrows.clone());
            for (w, c1, c2) in ladybugs(&d) {
                let t = classify_ladybug(&d, w, c1, c2).unwrap();
                for (flip, swapped) in [(vec![c1], true), (vec![c2], true), (vec![c1, c2], false)] {
                    let mut a = arrows.clone();
                    for c in flip {
                        a[c] = !a[c];
                    }
                    let e = classify_ladybug(&d.clone().with_arrows(a), w, c1, c2).unwrap();
                    prop_assert_eq!(e, if swapped { t.swap() } else { t });
                }
            }
        }
    }
}
