use std::collections::BTreeMap;
use std::fmt::Write;

use super::{DecisionAutomaton, StateId};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

impl DecisionAutomaton {
    /// Graphviz rendering of the reachable part. Terminal states are double
    /// circles labelled with their output; the initial state is drawn bold;
    /// parallel edges are merged into one edge with a symbol list.
    pub fn to_dot(&self) -> String {
        let reachable = self.reachable();
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in (0..self.num_states()).filter(|&q| reachable[q]) {
            let name = quote(self.name(q));
            let mut attrs = Vec::new();
            if let Some(y) = self.output(q) {
                attrs.push("shape=doublecircle".to_string());
                attrs.push(format!(
                    "label=\"{}\\n→ {}\"",
                    escape(self.name(q)),
                    escape(self.decisions().name(y))
                ));
            }
            if q == self.initial() {
                attrs.push("penwidth=2".into());
                attrs.push("xlabel=\"start\"".into());
            }
            if attrs.is_empty() {
                writeln!(out, "  {name};").unwrap();
            } else {
                writeln!(out, "  {name} [{}];", attrs.join(", ")).unwrap();
            }
        }
        for q in (0..self.num_states()).filter(|&q| reachable[q]) {
            let mut edges: BTreeMap<StateId, Vec<&str>> = BTreeMap::new();
            for s in self.alphabet().symbols() {
                edges.entry(self.next(q, s)).or_default().push(self.alphabet().name(s));
            }
            for (t, labels) in edges {
                writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(self.name(q)),
                    quote(self.name(t)),
                    quote(&labels.join(","))
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::first_to_two;
    use crate::seq::{Alphabet, Symbol};
    use crate::automaton::DecisionAutomaton;

    /// Node declarations are the lines without an edge arrow that end in `;`
    /// and start with a quoted identifier.
    fn node_lines(dot: &str) -> Vec<&str> {
        dot.lines()
            .map(str::trim)
            .filter(|l| l.starts_with('"') && !l.contains("->"))
            .collect()
    }

    #[test]
    fn first_to_two_dot() {
        let dot = first_to_two().to_dot();
        assert!(dot.starts_with("digraph"));
        let nodes = node_lines(&dot);
        assert_eq!(nodes.len(), 6);
        assert_eq!(nodes.iter().filter(|l| l.contains("doublecircle")).count(), 2);
        assert!(dot.contains("\"2_x\" -> \"2_x\" [label=\"x,y\"]"));
        assert!(dot.contains("\"q0\" [penwidth=2"));
    }

    #[test]
    fn trivial_machine_merges_self_loop_labels() {
        let a = Alphabet::new(["a", "b", "c"]).unwrap();
        let aut = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "t".into()],
            0,
            vec![vec![1, 1, 1], vec![1, 1, 1]],
            vec![None, Some(Symbol(2))],
        )
        .unwrap();
        let dot = aut.to_dot();
        assert!(dot.contains("\"q0\" -> \"t\" [label=\"a,b,c\"]"));
        assert!(dot.contains("\"t\" -> \"t\" [label=\"a,b,c\"]"));
        assert_eq!(node_lines(&dot).len(), 2);
    }

    #[test]
    fn node_count_matches_reachable_states() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        // An unreachable terminal must not be drawn.
        let aut = DecisionAutomaton::new(
            &a,
            &a,
            vec!["q0".into(), "t".into(), "orphan".into()],
            0,
            vec![vec![1, 1], vec![1, 1], vec![2, 2]],
            vec![None, Some(Symbol(0)), Some(Symbol(1))],
        )
        .unwrap();
        let reachable = aut.reachable().iter().filter(|&&r| r).count();
        assert_eq!(node_lines(&aut.to_dot()).len(), reachable);
    }
}
