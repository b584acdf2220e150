//! Annular Morse words and their text format.
//!
//! A word lives in the strip `[0, L] x R` with its two vertical edges glued
//! along the seam. Strands are numbered from 1, bottom to top, in every
//! slice between two events.
//!
//! ```text
//! # right-handed trefoil as a braid closure
//! strands 2
//! x+ 1
//! x+ 1
//! x+ 1
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i32 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

/// Positions are 1-based and refer to the slice just before the event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Event {
    /// Strands `position` and `position + 1` cross. `Positive` is the
    /// braid generator: a positive crossing when both strands run left to
    /// right.
    Crossing { position: usize, sign: CrossingSign },
    /// A local minimum creating strands `position` and `position + 1`.
    Cup { position: usize },
    /// A local maximum joining strands `position` and `position + 1`.
    Cap { position: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// The default direction of a component.
    Forward,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularWord {
    strands: usize,
    events: Vec<Event>,
    orientation: BTreeMap<usize, Direction>,
}

impl AnnularWord {
    /// Builds a word, checking positions and the seam condition.
    pub fn new(strands: usize, events: Vec<Event>) -> Result<Self> {
        let mut count = strands;
        for (idx, ev) in events.iter().enumerate() {
            count = step_count(count, ev, idx + 1)?;
        }
        if count != strands {
            return Err(Error::SeamMismatch {
                expected: strands,
                found: count,
            });
        }
        Ok(AnnularWord {
            strands,
            events,
            orientation: BTreeMap::new(),
        })
    }

    /// Plain braid closure: `gens` lists signed 1-based generators.
    pub fn braid(strands: usize, gens: &[i32]) -> Result<Self> {
        let events = gens
            .iter()
            .map(|&g| Event::Crossing {
                position: g.unsigned_abs() as usize,
                sign: if g > 0 {
                    CrossingSign::Positive
                } else {
                    CrossingSign::Negative
                },
            })
            .collect();
        Self::new(strands, events)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn orientation_directives(&self) -> &BTreeMap<usize, Direction> {
        &self.orientation
    }

    /// Sets the orientation of a link component (see
    /// [`crate::diagram::orient_crossings`] for the component numbering).
    pub fn set_orientation(&mut self, component: usize, dir: Direction) -> Result<()> {
        let comps = crate::diagram::orientation::component_count(self);
        if component >= comps {
            return Err(Error::Orientation(format!(
                "component {component} does not exist ({comps} components)"
            )));
        }
        self.orientation.insert(component, dir);
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Crossing { .. }))
            .count()
    }

    /// Strand counts of the slices; slice `k` sits just before event `k`,
    /// and slice 0 contains the seam. An empty word has a single slice.
    pub fn slice_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.events.len().max(1));
        let mut c = self.strands;
        out.push(c);
        for ev in self.events.iter().take(self.events.len().saturating_sub(1)) {
            c = step_count(c, ev, 0).expect("validated word");
            out.push(c);
        }
        out
    }

    /// Parses the text format: a `strands <m>` header, then one event per
    /// line (`x+ i`, `x- i`, `u i`, `n i`), then optional
    /// `orient <component> <+|->` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut strands: Option<usize> = None;
        let mut events = Vec::new();
        let mut directives: Vec<(usize, usize, Direction)> = Vec::new();
        let mut count = 0usize;
        let mut last_line = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: &str| Error::Syntax {
                line,
                message: message.to_string(),
            };
            let num = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| Error::Syntax {
                    line,
                    message: format!("expected a non-negative integer, got `{s}`"),
                })
            };
            match (strands, toks[0]) {
                (None, "strands") => {
                    if toks.len() != 2 {
                        return Err(syntax("expected `strands <m>`"));
                    }
                    let m = num(toks[1])?;
                    strands = Some(m);
                    count = m;
                }
                (None, _) => return Err(syntax("the first statement must be `strands <m>`")),
                (Some(_), "strands") => return Err(syntax("duplicate `strands` header")),
                (Some(_), kw @ ("x+" | "x-" | "u" | "n")) => {
                    if !directives.is_empty() {
                        return Err(syntax("events must precede orientation directives"));
                    }
                    if toks.len() != 2 {
                        return Err(syntax(&format!("expected `{kw} <position>`")));
                    }
                    let position = num(toks[1])?;
                    let ev = match kw {
                        "x+" => Event::Crossing {
                            position,
                            sign: CrossingSign::Positive,
                        },
                        "x-" => Event::Crossing {
                            position,
                            sign: CrossingSign::Negative,
                        },
                        "u" => Event::Cup { position },
                        _ => Event::Cap { position },
                    };
                    count = step_count(count, &ev, line)?;
                    events.push(ev);
                }
                (Some(_), "orient") => {
                    if toks.len() != 3 {
                        return Err(syntax("expected `orient <component> <+|->`"));
                    }
                    let comp = num(toks[1])?;
                    let dir = match toks[2] {
                        "+" => Direction::Forward,
                        "-" => Direction::Reversed,
                        other => {
                            return Err(syntax(&format!("expected `+` or `-`, got `{other}`")))
                        }
                    };
                    directives.push((line, comp, dir));
                }
                (Some(_), other) => return Err(syntax(&format!("unknown statement `{other}`"))),
            }
        }
        let strands = strands.ok_or(Error::Syntax {
            line: last_line.max(1),
            message: "missing `strands <m>` header".into(),
        })?;
        if count != strands {
            return Err(Error::SeamMismatch {
                expected: strands,
                found: count,
            });
        }
        let mut word = AnnularWord {
            strands,
            events,
            orientation: BTreeMap::new(),
        };
        for (line, comp, dir) in directives {
            if let Some(prev) = word.orientation.get(&comp) {
                if *prev != dir {
                    return Err(Error::Orientation(format!(
                        "line {line}: conflicting directives for component {comp}"
                    )));
                }
            }
            word.set_orientation(comp, dir).map_err(|e| match e {
                Error::Orientation(m) => Error::Orientation(format!("line {line}: {m}")),
                e => e,
            })?;
        }
        Ok(word)
    }

    /// Canonical text form; `parse(serialize(w)) == w`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AnnularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.strands)?;
        for ev in &self.events {
            match ev {
                Event::Crossing {
                    position,
                    sign: CrossingSign::Positive,
                } => writeln!(f, "x+ {position}")?,
                Event::Crossing {
                    position,
                    sign: CrossingSign::Negative,
                } => writeln!(f, "x- {position}")?,
                Event::Cup { position } => writeln!(f, "u {position}")?,
                Event::Cap { position } => writeln!(f, "n {position}")?,
            }
        }
        for (comp, dir) in &self.orientation {
            let s = match dir {
                Direction::Forward => "+",
                Direction::Reversed => "-",
            };
            writeln!(f, "orient {comp} {s}")?;
        }
        Ok(())
    }
}

fn step_count(count: usize, ev: &Event, line: usize) -> Result<usize> {
    let range = |position: usize, strands: usize| Error::PositionOutOfRange {
        line,
        position,
        strands,
    };
    match *ev {
        Event::Crossing { position, .. } | Event::Cap { position } => {
            if position == 0 || position + 1 > count {
                return Err(range(position, count));
            }
            Ok(if matches!(ev, Event::Cap { .. }) {
                count - 2
            } else {
                count
            })
        }
        Event::Cup { position } => {
            if position == 0 || position > count + 1 {
                return Err(range(position, count));
            }
            Ok(count + 2)
        }
    }
}
