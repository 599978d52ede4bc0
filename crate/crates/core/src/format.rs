//! Line-oriented text formats for spaces and maps.
//!
//! One grammar covers both `.finsp` and `.fmap` files; a file is a sequence
//! of blocks, and a map may only refer to spaces defined earlier (in the
//! same document or one it extends).
//!
//! ```text
//! # comment
//! space <name> <n>        start a space on points 0..n-1
//! reach <i> <j>           j lies in the minimal open set of i (closure applied)
//! label <i> <text>        optional point label
//! map <name> <src> <tgt>  start a map between named spaces
//! send <i> <j>            the map sends i to j; every source point exactly once
//! ```
//!
//! Blank lines and text after `#` are ignored. Names are single tokens.
//! Duplicate names, duplicate `send`/`label` lines, out-of-range indices and
//! partial maps are errors.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::finspace::{CMap, FinSpace, Space};
use crate::homotopy::Fence;

enum Block {
    Space {
        name: String,
        n: usize,
        pairs: Vec<(usize, usize)>,
        labels: Vec<Option<String>>,
    },
    Map {
        name: String,
        source: Space,
        target: Space,
        sends: Vec<Option<usize>>,
    },
}

/// Named spaces and maps in definition order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    spaces: Vec<(String, Space)>,
    maps: Vec<(String, CMap)>,
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

fn parse_name(tok: Option<&str>, line: usize, what: &str) -> Result<String> {
    tok.map(str::to_owned).ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })
}

fn in_range(i: usize, n: usize, line: usize) -> Result<()> {
    if i < n {
        Ok(())
    } else {
        Err(Error::Parse {
            line,
            msg: format!("index {i} out of range for {n} points"),
        })
    }
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Self::new();
        doc.extend_from_str(text)?;
        Ok(doc)
    }

    /// Parses `text` with the names already in `self` in scope.
    pub fn extend_from_str(&mut self, text: &str) -> Result<()> {
        let mut block: Option<(usize, Block)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace();
            let keyword = toks.next().unwrap_or_default();
            match keyword {
                "space" | "map" => {
                    if let Some((start, b)) = block.take() {
                        self.finish(start, b)?;
                    }
                    let name = parse_name(toks.next(), line, "name")?;
                    if self.space(&name).is_some() || self.map(&name).is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: format!("duplicate name `{name}`"),
                        });
                    }
                    let b = if keyword == "space" {
                        let n = parse_index(toks.next(), line, "point count")?;
                        Block::Space {
                            name,
                            n,
                            pairs: Vec::new(),
                            labels: vec![None; n],
                        }
                    } else {
                        let src = parse_name(toks.next(), line, "source space")?;
                        let tgt = parse_name(toks.next(), line, "target space")?;
                        let lookup = |s: &str| {
                            self.space(s).cloned().ok_or_else(|| Error::Parse {
                                line,
                                msg: format!("unknown space `{s}`"),
                            })
                        };
                        let source = lookup(&src)?;
                        let target = lookup(&tgt)?;
                        let sends = vec![None; source.n()];
                        Block::Map {
                            name,
                            source,
                            target,
                            sends,
                        }
                    };
                    if toks.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: "trailing tokens".into(),
                        });
                    }
                    block = Some((line, b));
                }
                "reach" => match &mut block {
                    Some((_, Block::Space { n, pairs, .. })) => {
                        let a = parse_index(toks.next(), line, "point")?;
                        let b = parse_index(toks.next(), line, "point")?;
                        in_range(a, *n, line)?;
                        in_range(b, *n, line)?;
                        if toks.next().is_some() {
                            return Err(Error::Parse {
                                line,
                                msg: "trailing tokens".into(),
                            });
                        }
                        pairs.push((a, b));
                    }
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: "`reach` outside a space".into(),
                        })
                    }
                },
                "label" => match &mut block {
                    Some((_, Block::Space { n, labels, .. })) => {
                        let a = parse_index(toks.next(), line, "point")?;
                        in_range(a, *n, line)?;
                        let text: Vec<&str> = toks.collect();
                        if text.is_empty() {
                            return Err(Error::Parse {
                                line,
                                msg: "empty label".into(),
                            });
                        }
                        if labels[a].is_some() {
                            return Err(Error::Parse {
                                line,
                                msg: format!("point {a} labelled twice"),
                            });
                        }
                        labels[a] = Some(text.join(" "));
                    }
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: "`label` outside a space".into(),
                        })
                    }
                },
                "send" => match &mut block {
                    Some((
                        _,
                        Block::Map {
                            source,
                            target,
                            sends,
                            ..
                        },
                    )) => {
                        let a = parse_index(toks.next(), line, "point")?;
                        let b = parse_index(toks.next(), line, "point")?;
                        in_range(a, source.n(), line)?;
                        in_range(b, target.n(), line)?;
                        if toks.next().is_some() {
                            return Err(Error::Parse {
                                line,
                                msg: "trailing tokens".into(),
                            });
                        }
                        if sends[a].replace(b).is_some() {
                            return Err(Error::Parse {
                                line,
                                msg: format!("point {a} sent twice"),
                            });
                        }
                    }
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: "`send` outside a map".into(),
                        })
                    }
                },
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown keyword `{other}`"),
                    })
                }
            }
        }
        if let Some((start, b)) = block.take() {
            self.finish(start, b)?;
        }
        Ok(())
    }

    fn finish(&mut self, line: usize, block: Block) -> Result<()> {
        let wrap = |e: Error| Error::Parse {
            line,
            msg: e.to_string(),
        };
        match block {
            Block::Space {
                name,
                n,
                pairs,
                labels,
            } => {
                let space = FinSpace::new(n, &pairs).map_err(wrap)?;
                let space = space.with_labels(labels).map_err(wrap)?;
                self.spaces.push((name, space.into_space()));
            }
            Block::Map {
                name,
                source,
                target,
                sends,
            } => {
                let assignment = sends
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.ok_or_else(|| Error::Parse {
                            line,
                            msg: format!("map `{name}` does not send point {i}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let map = CMap::new(&source, &target, assignment).map_err(wrap)?;
                self.maps.push((name, map));
            }
        }
        Ok(())
    }

    pub fn space(&self, name: &str) -> Option<&Space> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn map(&self, name: &str) -> Option<&CMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn spaces(&self) -> &[(String, Space)] {
        &self.spaces
    }

    pub fn maps(&self) -> &[(String, CMap)] {
        &self.maps
    }

    /// The last map defined, the usual payload of a `.fmap` file.
    pub fn last_map(&self) -> Option<&CMap> {
        self.maps.last().map(|(_, m)| m)
    }

    pub fn add_space(&mut self, name: &str, space: Space) -> Result<()> {
        self.check_fresh(name)?;
        self.spaces.push((name.to_owned(), space));
        Ok(())
    }

    pub fn add_map(&mut self, name: &str, map: CMap) -> Result<()> {
        self.check_fresh(name)?;
        self.maps.push((name.to_owned(), map));
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(Error::Config(format!("invalid name `{name}`")));
        }
        if self.space(name).is_some() || self.map(name).is_some() {
            return Err(Error::Config(format!("duplicate name `{name}`")));
        }
        Ok(())
    }

    fn space_name(&self, space: &Space) -> Result<&str> {
        self.spaces
            .iter()
            .find(|(_, s)| std::sync::Arc::ptr_eq(s, space) || **s == **space)
            .map(|(n, _)| n.as_str())
            .ok_or_else(|| Error::Mismatch("map refers to an unnamed space".into()))
    }

    /// Serializes every block; the output parses back to an equal document.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for (name, space) in &self.spaces {
            out.push_str(&write_space(name, space));
        }
        for (name, map) in &self.maps {
            let src = self.space_name(map.source())?;
            let tgt = self.space_name(map.target())?;
            out.push_str(&write_map(name, src, tgt, map));
        }
        Ok(out)
    }
}

pub fn write_space(name: &str, space: &FinSpace) -> String {
    let mut out = format!("space {name} {}\n", space.n());
    for (a, b) in space.strict_pairs() {
        let _ = writeln!(out, "reach {a} {b}");
    }
    for (i, l) in space.labels().iter().enumerate() {
        if let Some(l) = l {
            let _ = writeln!(out, "label {i} {l}");
        }
    }
    out
}

pub fn write_map(name: &str, source: &str, target: &str, map: &CMap) -> String {
    let mut out = format!("map {name} {source} {target}\n");
    for (i, &j) in map.assignment().iter().enumerate() {
        let _ = writeln!(out, "send {i} {j}");
    }
    out
}

/// A fence as a self-contained `.fmap` document: both spaces, then the maps
/// `h0, h1, ...` in order.
pub fn fence_to_fmap(fence: &Fence) -> String {
    let start = fence.start();
    let mut out = write_space("X", start.source());
    out.push_str(&write_space("Y", start.target()));
    for (i, h) in fence.maps().iter().enumerate() {
        out.push_str(&write_map(&format!("h{i}"), "X", "Y", h));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::homotopy::homotopic;

    const SIERPINSKI: &str = "\
# the Sierpinski space
space S 2
reach 1 0
label 0 open point
label 1 closed point

map f S S   # a constant
send 0 1
send 1 1
";

    #[test]
    fn parses_spaces_maps_and_labels() {
        let doc = Document::parse(SIERPINSKI).unwrap();
        let s = doc.space("S").unwrap();
        assert_eq!(**s, FinSpace::sierpinski());
        assert_eq!(s.label(0), Some("open point"));
        assert_eq!(doc.map("f").unwrap().assignment(), &[1, 1]);
    }

    #[test]
    fn closure_is_applied() {
        let doc = Document::parse("space C 3\nreach 2 1\nreach 1 0\n").unwrap();
        assert!(doc.space("C").unwrap().reach(2, 0));
    }

    #[test]
    fn round_trip() {
        let doc = Document::parse(SIERPINSKI).unwrap();
        let again = Document::parse(&doc.to_text().unwrap()).unwrap();
        assert_eq!(**again.space("S").unwrap(), **doc.space("S").unwrap());
        assert_eq!(again.map("f").unwrap(), doc.map("f").unwrap());
        assert_eq!(
            again.space("S").unwrap().labels(),
            doc.space("S").unwrap().labels()
        );
    }

    #[test]
    fn maps_can_use_spaces_from_another_file() {
        let mut doc = Document::parse("space S 2\nreach 1 0\n").unwrap();
        doc.extend_from_str("map id S S\nsend 0 0\nsend 1 1\n")
            .unwrap();
        assert_eq!(doc.last_map().unwrap().assignment(), &[0, 1]);
    }

    fn parse_err(text: &str) -> (usize, String) {
        match Document::parse(text) {
            Err(Error::Parse { line, msg }) => (line, msg),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_err("space A 1\nspace A 2\n").0, 2);
        assert_eq!(parse_err("space A 2\nreach 0 2\n").0, 2);
        assert_eq!(parse_err("reach 0 0\n").0, 1);
        assert_eq!(parse_err("space A 2\nmap f A B\n").0, 2);
        assert_eq!(parse_err("space A 2\nmap f A A\nsend 0 0\n").0, 2);
        assert_eq!(parse_err("space A 2\nmap f A A\nsend 0 0\nsend 0 1\n").0, 4);
        assert_eq!(parse_err("space A 2\nlabel 0 a\nlabel 0 b\n").0, 3);
        assert_eq!(parse_err("space A x\n").0, 1);
        assert_eq!(parse_err("bogus\n").0, 1);
        assert_eq!(parse_err("space A 1 extra\n").0, 1);
        let (line, msg) = parse_err("space S 2\nreach 1 0\nmap f S S\nsend 0 1\nsend 1 0\n");
        assert_eq!(line, 3);
        assert!(msg.contains("discontinuous"), "{msg}");
    }

    #[test]
    fn fence_document_parses_back() {
        let s = FinSpace::sierpinski().into_space();
        let id = CMap::identity(&s);
        let one = CMap::constant(&s, &s, 1).unwrap();
        let fence = homotopic(&id, &one, &Budget::new(1000)).unwrap().unwrap();
        let doc = Document::parse(&fence_to_fmap(&fence)).unwrap();
        assert_eq!(doc.maps().len(), fence.maps().len());
        assert_eq!(doc.map("h0").unwrap().assignment(), id.assignment());
        assert_eq!(doc.last_map().unwrap().assignment(), one.assignment());
    }
}
