//! Text format: first line n, then one line per left vertex listing its
//! neighbors (1-based, space-separated). Lines starting with '#' are skipped.

use super::graph::BipartiteGraph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line: ln + 1, msg: format!("expected n, got '{}'", first.trim()) })?;
    let mut neighbors = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: text.lines().count() + 1,
            msg: format!("expected {n} neighbor lines"),
        })?;
        let mut list = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad index '{tok}'") })?;
            if v == 0 || v > n {
                return Err(Error::Parse { line: ln + 1, msg: format!("index {v} outside [1, {n}]") });
            }
            list.push(v - 1);
        }
        neighbors.push(list);
    }
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse { line: ln + 1, msg: format!("unexpected trailing line '{}'", extra.trim()) });
    }
    BipartiteGraph::from_neighbors(neighbors)
}

pub fn format_graph(g: &BipartiteGraph) -> String {
    let mut s = format!("{}\n", g.n());
    for i in 0..g.n() {
        let row: Vec<String> = g.neighbors(i).iter().map(|j| (j + 1).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::graph::Family;

    #[test]
    fn round_trip() {
        let g = BipartiteGraph::family(Family::Distance(2), 6).unwrap();
        let h = parse_graph(&format_graph(&g)).unwrap();
        for i in 0..6 {
            assert_eq!(g.neighbors(i), h.neighbors(i));
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2\n1 3\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2\n1\n1\n"), Err(Error::NoPerfectMatching)));
    }
}
