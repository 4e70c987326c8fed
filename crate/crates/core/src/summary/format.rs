//! Line-oriented text format:
//!
//! ```text
//! SLUGGER-HSUM v1
//! <subnode_count> <supernode_count> <|P+|> <|P-|> <|H|>
//! H <parent> <child>     (|H| lines)
//! P <a> <b>              (|P+| lines, a <= b)
//! N <a> <b>              (|P-| lines, a <= b)
//! ```
//!
//! Each section is sorted by `(first, second)`. Internal supernodes are
//! numbered densely from `subnode_count`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::summary::{HierarchicalSummary, Sign, SuperEdgeSet, SupernodeForest, SupernodeId};

pub const FORMAT_MAGIC: &str = "SLUGGER-HSUM";
const FORMAT_VERSION: &str = "v1";

/// Writes the summary, renumbering internal supernodes densely if needed.
pub fn serialize(s: &HierarchicalSummary) -> String {
    let compacted;
    let s = if s.forest.live_count() == s.forest.id_bound() {
        s
    } else {
        let mut c = s.clone();
        c.compact();
        compacted = c;
        &compacted
    };
    let mut h: Vec<(SupernodeId, SupernodeId)> = Vec::with_capacity(s.h_count());
    for x in 0..s.forest.id_bound() as SupernodeId {
        for &c in s.forest.children(x) {
            h.push((x, c));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_MAGIC} {FORMAT_VERSION}");
    let _ = writeln!(
        out,
        "{} {} {} {} {}",
        s.subnode_count(),
        s.forest.live_count(),
        s.p_count(),
        s.n_count(),
        h.len()
    );
    for (p, c) in h {
        let _ = writeln!(out, "H {p} {c}");
    }
    for want in [Sign::Pos, Sign::Neg] {
        let tag = if want == Sign::Pos { 'P' } else { 'N' };
        for (a, b, sign) in s.edges.iter() {
            if sign == want {
                let _ = writeln!(out, "{tag} {a} {b}");
            }
        }
    }
    out
}

fn format_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Format(msg.into()))
}

pub fn deserialize(text: &str) -> Result<HierarchicalSummary> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
    match header.split_once(' ') {
        Some((FORMAT_MAGIC, FORMAT_VERSION)) => {}
        Some((FORMAT_MAGIC, other)) => return format_err(format!("unsupported version {other:?}")),
        _ => return format_err("bad header magic"),
    }
    let (_, counts) = lines.next().ok_or_else(|| Error::Format("truncated: missing counts".into()))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Format(format!("bad count {t:?}"))))
        .collect::<Result<_>>()?;
    let [subnodes, supernodes, n_pos, n_neg, n_h] = counts[..] else {
        return format_err("counts line needs five fields");
    };
    if supernodes < subnodes {
        return format_err("fewer supernodes than subnodes");
    }

    let mut read = |tag: &str| -> Result<(SupernodeId, SupernodeId)> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::Format(format!("truncated: expected a {tag} line")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != tag {
            return format_err(format!("line {}: expected `{tag} <id> <id>`", no + 1));
        }
        let parse = |t: &str| -> Result<SupernodeId> {
            let id: usize = t
                .parse()
                .map_err(|_| Error::Format(format!("line {}: bad id {t:?}", no + 1)))?;
            if id >= supernodes {
                return format_err(format!("line {}: dangling supernode {id}", no + 1));
            }
            Ok(id as SupernodeId)
        };
        Ok((parse(fields[1])?, parse(fields[2])?))
    };

    let mut links = Vec::with_capacity(n_h);
    for _ in 0..n_h {
        links.push(read("H")?);
    }
    let mut signed = Vec::with_capacity(n_pos + n_neg);
    for _ in 0..n_pos {
        signed.push((read("P")?, Sign::Pos));
    }
    for _ in 0..n_neg {
        signed.push((read("N")?, Sign::Neg));
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return format_err(format!("line {}: trailing content", no + 1));
    }

    let forest = SupernodeForest::from_links(subnodes, supernodes, &links)
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut edges = SuperEdgeSet::new(supernodes);
    for ((a, b), sign) in signed {
        if a > b {
            return format_err(format!("edge ({a}, {b}) not written with a <= b"));
        }
        if edges.set(a, b, Some(sign)).is_some() {
            return format_err(format!("pair ({a}, {b}) listed twice"));
        }
    }
    Ok(HierarchicalSummary { forest, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::InputGraph;

    #[test]
    fn exact_layout() {
        let mut s = HierarchicalSummary::empty(3);
        let a = s.merge_roots(&[0, 1]).unwrap();
        s.set_edge(a, 2, Some(Sign::Pos)).unwrap();
        s.set_edge(1, 2, Some(Sign::Neg)).unwrap();
        let text = serialize(&s);
        assert_eq!(text, "SLUGGER-HSUM v1\n3 4 1 1 2\nH 3 0\nH 3 1\nP 2 3\nN 1 2\n");
        assert_eq!(deserialize(&text).unwrap(), s);
    }

    #[test]
    fn k3_round_trip() {
        let g = InputGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = HierarchicalSummary::trivial(&g);
        assert_eq!(deserialize(&serialize(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_corruption() {
        let good = "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\nP 2 3\n";
        deserialize(good).unwrap();
        for bad in [
            "SLUGGR-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\nP 2 3\n",
            "SLUGGER-HSUM v2\n3 4 1 0 2\nH 3 0\nH 3 1\nP 2 3\n",
            "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\n",
            "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\nP 2 7\n",
            "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 0\nP 2 3\n",
            "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\nP 3 2\n",
            "SLUGGER-HSUM v1\n3 4 0 0 0\n",
            "SLUGGER-HSUM v1\n3 4 1 0 2\nH 3 0\nH 3 1\nP 2 3\nP 0 1\n",
        ] {
            assert!(matches!(deserialize(bad), Err(Error::Format(_))), "accepted {bad:?}");
        }
    }
}
