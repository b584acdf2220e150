use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a correspondence `X <- A -> Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Element {
    pub source: u32,
    pub target: u32,
    pub decoration: i8,
}

/// A finite correspondence between sets `0..source_size` and
/// `0..target_size` with a sign on every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoratedCorrespondence {
    pub source_size: usize,
    pub target_size: usize,
    pub elements: Vec<Element>,
}

impl DecoratedCorrespondence {
    pub fn new(source_size: usize, target_size: usize, elements: Vec<Element>) -> Result<Self> {
        for e in &elements {
            if e.source as usize >= source_size || e.target as usize >= target_size {
                return Err(Error::Composition(format!(
                    "element {e:?} outside {source_size} x {target_size}"
                )));
            }
            if e.decoration.abs() != 1 {
                return Err(Error::Composition(format!("decoration {} is not a sign", e.decoration)));
            }
        }
        Ok(DecoratedCorrespondence {
            source_size,
            target_size,
            elements,
        })
    }

    pub fn identity(size: usize) -> Self {
        DecoratedCorrespondence {
            source_size: size,
            target_size: size,
            elements: (0..size as u32)
                .map(|i| Element {
                    source: i,
                    target: i,
                    decoration: 1,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements leaving a source member.
    pub fn from_source(&self, x: u32) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(move |e| e.source == x)
    }

    /// Signed count of elements over each `(source, target)` pair.
    pub fn signed_counts(&self) -> BTreeMap<(u32, u32), i64> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry((e.source, e.target)).or_insert(0) += e.decoration as i64;
        }
        m
    }

    /// Number of elements over each `(source, target)` pair.
    pub fn counts(&self) -> BTreeMap<(u32, u32), usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry((e.source, e.target)).or_insert(0) += 1;
        }
        m
    }

    /// Drops decorations.
    pub fn forget(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.elements {
            e.decoration = 1;
        }
        out
    }
}

/// Fiber product `B ×_Y A` of `A: X -> Y` and `B: Y -> Z`, with decorations
/// multiplied. Element `(b, a)` is listed in order of `a`, then `b`; the
/// second return value records that provenance.
pub fn compose_indexed(
    b: &DecoratedCorrespondence,
    a: &DecoratedCorrespondence,
) -> Result<(DecoratedCorrespondence, Vec<(usize, usize)>)> {
    if a.target_size != b.source_size {
        return Err(Error::Composition(format!(
            "target of size {} does not match source of size {}",
            a.target_size, b.source_size
        )));
    }
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); b.source_size];
    for (i, e) in b.elements.iter().enumerate() {
        by_source[e.source as usize].push(i);
    }
    let mut elements = Vec::new();
    let mut prov = Vec::new();
    for (ia, ea) in a.elements.iter().enumerate() {
        for &ib in &by_source[ea.target as usize] {
            let eb = b.elements[ib];
            elements.push(Element {
                source: ea.source,
                target: eb.target,
                decoration: ea.decoration * eb.decoration,
            });
            prov.push((ib, ia));
        }
    }
    Ok((
        DecoratedCorrespondence {
            source_size: a.source_size,
            target_size: b.target_size,
            elements,
        },
        prov,
    ))
}

/// `B ∘ A` for `A: X -> Y`, `B: Y -> Z`.
pub fn compose(b: &DecoratedCorrespondence, a: &DecoratedCorrespondence) -> Result<DecoratedCorrespondence> {
    Ok(compose_indexed(b, a)?.0)
}

/// Whether two correspondences agree up to relabeling elements: the same
/// multiset of `(source, target, decoration)`.
pub fn isomorphic(a: &DecoratedCorrespondence, b: &DecoratedCorrespondence) -> bool {
    if (a.source_size, a.target_size) != (b.source_size, b.target_size) {
        return false;
    }
    let mut x = a.elements.clone();
    let mut y = b.elements.clone();
    x.sort();
    y.sort();
    x == y
}
