//! Published lists of vertex-critical graphs, bundled as adjacency lists.

use crate::format::parse_many;
use crate::graph::Graph;

/// A bundled list: `k`, the pattern names it avoids and the graphs.
#[derive(Clone, Copy, Debug)]
pub struct CriticalList {
    pub name: &'static str,
    pub k: usize,
    pub patterns: &'static str,
    text: &'static str,
}

impl CriticalList {
    pub fn graphs(&self) -> Vec<Graph> {
        parse_many(self.text).expect("bundled lists parse")
    }

    pub fn text(&self) -> &'static str {
        self.text
    }
}

pub const K4_P5_GEM: CriticalList =
    CriticalList { name: "k4_p5_gem", k: 4, patterns: "P5,gem", text: include_str!("../data/k4_p5_gem.adj") };
pub const K5_P5_GEM: CriticalList =
    CriticalList { name: "k5_p5_gem", k: 5, patterns: "P5,gem", text: include_str!("../data/k5_p5_gem.adj") };
pub const K4_P5_COP3P2: CriticalList =
    CriticalList { name: "k4_p5_cop3p2", k: 4, patterns: "P5,coP3P2", text: include_str!("../data/k4_p5_cop3p2.adj") };
pub const K5_P5_COP3P2: CriticalList =
    CriticalList { name: "k5_p5_cop3p2", k: 5, patterns: "P5,coP3P2", text: include_str!("../data/k5_p5_cop3p2.adj") };

pub const ALL: [CriticalList; 4] = [K4_P5_GEM, K5_P5_GEM, K4_P5_COP3P2, K5_P5_COP3P2];

pub fn by_name(name: &str) -> Option<CriticalList> {
    ALL.into_iter().find(|l| l.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = ALL.iter().map(|l| l.graphs().len()).collect();
        assert_eq!(sizes, vec![3, 7, 6, 20]);
        assert!(by_name("k5_p5_gem").is_some());
        assert!(by_name("nope").is_none());
    }
}
