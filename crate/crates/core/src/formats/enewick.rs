//! Extended Newick with time-stamped nodes.
//!
//! Grammar (whitespace and `[...]` comments allowed between tokens):
//!
//! ```text
//! network := subtree ';'
//! subtree := '(' subtree (',' subtree)* ')' name? length? | name? length?
//! name    := label? ('#' tag)?
//! length  := ':' decimal
//! ```
//!
//! Occurrences sharing a hybrid tag are one node. The occurrence with
//! children defines it; the others refer to it. Every branch needs a
//! strictly positive length, the root sits at time 0, and all paths to a
//! node must give it the same time.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use super::{FormatError, Position};
use crate::dag::DagView;
use crate::error::ReebError;
use crate::graph::{Edge, ReebGraph, CUT_PREFIX};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

const MAX_DEPTH: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkNode {
    pub label: Option<String>,
    /// hybrid tag without the `#`, e.g. `H1`
    pub hybrid: Option<String>,
    /// time since the root
    pub stamp: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkEdge {
    pub parent: usize,
    pub child: usize,
    pub length: Rational,
}

/// A merged network. Nodes are numbered in depth-first order of first
/// visit, children in textual order, so equal networks compare equal.
#[derive(Clone, Debug)]
pub struct NetworkDocument {
    pub nodes: Vec<NetworkNode>,
    pub edges: Vec<NetworkEdge>,
    pub root: usize,
    /// where each node was defined in the source text
    pub positions: Vec<Position>,
}

impl PartialEq for NetworkDocument {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges && self.root == other.root
    }
}

impl Eq for NetworkDocument {}

impl NetworkDocument {
    pub fn children(&self, node: usize) -> impl Iterator<Item = &NetworkEdge> + '_ {
        self.edges.iter().filter(move |e| e.parent == node)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&v| self.children(v).next().is_none())
            .collect()
    }

    pub fn reticulations(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&v| self.edges.iter().filter(|e| e.child == v).count() >= 2)
            .collect()
    }
}

/// One syntactic occurrence of a node.
#[derive(Debug)]
struct Occurrence {
    label: Option<String>,
    hybrid: Option<String>,
    length: Option<(Rational, Position)>,
    pos: Position,
    children: Vec<usize>,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) -> Result<(), FormatError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('[') => {
                    let start = self.pos();
                    self.bump();
                    loop {
                        match self.bump() {
                            Some(']') => break,
                            Some(_) => {}
                            None => return Err(syntax(start, "unterminated comment")),
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }
}

fn syntax(pos: Position, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        pos,
        message: message.into(),
    }
}

fn is_delimiter(c: char) -> bool {
    matches!(c, '(' | ')' | ',' | ':' | ';' | '[' | ']' | '\'') || c.is_whitespace()
}

struct Parser<'a> {
    lex: Lexer<'a>,
    occ: Vec<Occurrence>,
    open: Vec<Position>,
}

impl Parser<'_> {
    fn subtree(&mut self) -> Result<usize, FormatError> {
        self.lex.skip_trivia()?;
        let pos = self.lex.pos();
        let mut children = Vec::new();
        if self.lex.peek() == Some('(') {
            if self.open.len() >= MAX_DEPTH {
                return Err(syntax(pos, "nesting too deep"));
            }
            self.open.push(pos);
            self.lex.bump();
            loop {
                children.push(self.subtree()?);
                self.lex.skip_trivia()?;
                let here = self.lex.pos();
                match self.lex.bump() {
                    Some(',') => continue,
                    Some(')') => break,
                    Some(c) if c != ';' => {
                        return Err(syntax(here, format!("expected ',' or ')', found '{c}'")))
                    }
                    _ => {
                        return Err(FormatError::UnbalancedParens {
                            pos: *self.open.last().expect("inside a group"),
                        })
                    }
                }
            }
            self.open.pop();
        }
        self.lex.skip_trivia()?;
        let (label, hybrid) = self.name()?;
        self.lex.skip_trivia()?;
        let length = if self.lex.peek() == Some(':') {
            self.lex.bump();
            self.lex.skip_trivia()?;
            let at = self.lex.pos();
            let text = self.bare_word();
            if text.is_empty() {
                return Err(syntax(at, "expected a branch length"));
            }
            let value = parse_rational(&text)
                .ok_or_else(|| syntax(at, format!("invalid branch length '{text}'")))?;
            Some((value, at))
        } else {
            None
        };
        self.occ.push(Occurrence {
            label,
            hybrid,
            length,
            pos,
            children,
        });
        Ok(self.occ.len() - 1)
    }

    fn bare_word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.lex.peek() {
            if is_delimiter(c) {
                break;
            }
            out.push(c);
            self.lex.bump();
        }
        out
    }

    fn name(&mut self) -> Result<(Option<String>, Option<String>), FormatError> {
        let start = self.lex.pos();
        let mut text = String::new();
        let mut quoted = false;
        if self.lex.peek() == Some('\'') {
            quoted = true;
            self.lex.bump();
            loop {
                match self.lex.bump() {
                    Some('\'') if self.lex.peek() == Some('\'') => {
                        self.lex.bump();
                        text.push('\'');
                    }
                    Some('\'') => break,
                    Some(c) => text.push(c),
                    None => return Err(syntax(start, "unterminated quoted label")),
                }
            }
        }
        let rest = self.bare_word();
        let (label, hybrid) = if quoted {
            match rest.strip_prefix('#') {
                Some(tag) => (Some(text), Some(tag.to_string())),
                None if rest.is_empty() => (Some(text), None),
                None => return Err(syntax(start, "unexpected text after quoted label")),
            }
        } else {
            match rest.split_once('#') {
                Some((l, tag)) => (
                    (!l.is_empty()).then(|| l.to_string()),
                    Some(tag.to_string()),
                ),
                None => ((!rest.is_empty()).then_some(rest), None),
            }
        };
        if let Some(tag) = &hybrid {
            let digits = tag.trim_start_matches(|c: char| c.is_ascii_alphabetic());
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(start, format!("malformed hybrid tag '#{tag}'")));
            }
        }
        Ok((label, hybrid))
    }
}

pub fn parse_enewick(text: &str) -> Result<NetworkDocument, FormatError> {
    let mut p = Parser {
        lex: Lexer::new(text),
        occ: Vec::new(),
        open: Vec::new(),
    };
    let root = p.subtree()?;
    p.lex.skip_trivia()?;
    let here = p.lex.pos();
    match p.lex.bump() {
        Some(';') => {}
        Some(')') => return Err(FormatError::UnbalancedParens { pos: here }),
        Some(c) => return Err(syntax(here, format!("expected ';', found '{c}'"))),
        None => return Err(syntax(here, "expected ';' at end of input")),
    }
    p.lex.skip_trivia()?;
    if p.lex.peek().is_some() {
        return Err(syntax(p.lex.pos(), "trailing input after ';'"));
    }
    merge(p.occ, root)
}

fn merge(occ: Vec<Occurrence>, root: usize) -> Result<NetworkDocument, FormatError> {
    // hybrid tag -> occurrences, in textual order
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, o) in occ.iter().enumerate() {
        if let Some(tag) = &o.hybrid {
            groups.entry(tag.as_str()).or_default().push(i);
        }
    }
    let mut definition: HashMap<&str, usize> = HashMap::new();
    for (tag, members) in &groups {
        let first = members[0];
        let err = |message: &str| FormatError::HybridArity {
            tag: tag.to_string(),
            pos: occ[first].pos,
            message: message.to_string(),
        };
        if members.len() < 2 {
            return Err(err("appears only once"));
        }
        if members.contains(&root) {
            return Err(err("the root cannot be a hybrid"));
        }
        let defs: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| !occ[m].children.is_empty())
            .collect();
        if defs.len() > 1 {
            return Err(FormatError::HybridArity {
                tag: tag.to_string(),
                pos: occ[defs[1]].pos,
                message: "defined twice".to_string(),
            });
        }
        let labels: BTreeSet<&String> = members
            .iter()
            .filter_map(|&m| occ[m].label.as_ref())
            .collect();
        if labels.len() > 1 {
            return Err(err("occurrences carry different labels"));
        }
        definition.insert(tag, defs.first().copied().unwrap_or(first));
    }

    let mut doc = NetworkDocument {
        nodes: Vec::new(),
        edges: Vec::new(),
        root: 0,
        positions: Vec::new(),
    };
    let mut hybrid_node: HashMap<&str, usize> = HashMap::new();
    let mut on_stack: BTreeSet<&str> = BTreeSet::new();

    // explicit stack: (occurrence, node, next child index)
    let new_node = |doc: &mut NetworkDocument, o: &Occurrence, label: Option<String>| {
        doc.nodes.push(NetworkNode {
            label,
            hybrid: o.hybrid.clone(),
            stamp: Rational::zero(),
        });
        doc.positions.push(o.pos);
        doc.nodes.len() - 1
    };
    let label_of = |o: &Occurrence| -> Option<String> {
        match &o.hybrid {
            Some(tag) => groups[tag.as_str()]
                .iter()
                .find_map(|&m| occ[m].label.clone()),
            None => o.label.clone(),
        }
    };
    let root_node = new_node(&mut doc, &occ[root], label_of(&occ[root]));
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, root_node, 0)];
    while let Some(top) = stack.last_mut() {
        let (site, node, next) = *top;
        if next == occ[site].children.len() {
            if let Some(tag) = &occ[site].hybrid {
                on_stack.remove(tag.as_str());
            }
            stack.pop();
            continue;
        }
        top.2 += 1;
        let c = occ[site].children[next];
        let child = &occ[c];
        let (length, at) = child
            .length
            .clone()
            .ok_or_else(|| syntax(child.pos, "missing branch length"))?;
        if !length.is_positive() {
            return Err(FormatError::TimeInconsistency {
                pos: at,
                message: format!(
                    "branch length {} is not strictly positive",
                    format_rational(&length)
                ),
            });
        }
        let target = match &child.hybrid {
            Some(tag) => match hybrid_node.get(tag.as_str()) {
                Some(&n) => {
                    if on_stack.contains(tag.as_str()) {
                        return Err(FormatError::TimeInconsistency {
                            pos: child.pos,
                            message: format!("hybrid '#{tag}' is its own ancestor"),
                        });
                    }
                    n
                }
                None => {
                    let n = new_node(&mut doc, child, label_of(child));
                    hybrid_node.insert(tag.as_str(), n);
                    on_stack.insert(tag.as_str());
                    stack.push((definition[tag.as_str()], n, 0));
                    n
                }
            },
            None => {
                let n = new_node(&mut doc, child, label_of(child));
                stack.push((c, n, 0));
                n
            }
        };
        doc.edges.push(NetworkEdge {
            parent: node,
            child: target,
            length,
        });
    }
    doc.root = root_node;
    assign_stamps(&mut doc)?;
    Ok(doc)
}

fn assign_stamps(doc: &mut NetworkDocument) -> Result<(), FormatError> {
    let n = doc.nodes.len();
    let mut pending = vec![0usize; n];
    for e in &doc.edges {
        pending[e.child] += 1;
    }
    let mut stamp: Vec<Option<Rational>> = vec![None; n];
    stamp[doc.root] = Some(Rational::zero());
    let mut queue = VecDeque::from([doc.root]);
    while let Some(v) = queue.pop_front() {
        let here = stamp[v].clone().expect("parents first");
        for e in doc.edges.iter().filter(|e| e.parent == v) {
            let t = &here + &e.length;
            match &stamp[e.child] {
                Some(prev) if *prev != t => {
                    return Err(FormatError::TimeInconsistency {
                        pos: doc.positions[e.child],
                        message: format!(
                            "node {} reached at times {} and {}",
                            describe(&doc.nodes[e.child]),
                            format_rational(prev),
                            format_rational(&t)
                        ),
                    })
                }
                _ => stamp[e.child] = Some(t),
            }
            pending[e.child] -= 1;
            if pending[e.child] == 0 {
                queue.push_back(e.child);
            }
        }
    }
    for (node, s) in doc.nodes.iter_mut().zip(stamp) {
        node.stamp = s.unwrap_or_default();
    }
    Ok(())
}

fn describe(node: &NetworkNode) -> String {
    match (&node.label, &node.hybrid) {
        (Some(l), Some(h)) => format!("'{l}#{h}'"),
        (Some(l), None) => format!("'{l}'"),
        (None, Some(h)) => format!("'#{h}'"),
        (None, None) => "(unlabelled)".to_string(),
    }
}

fn quote(label: &str) -> String {
    let plain = !label.is_empty() && !label.chars().any(|c| is_delimiter(c) || c == '#');
    if plain {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

/// Canonical text: children in stored order, each hybrid defined at its
/// first occurrence.
pub fn write_enewick(doc: &NetworkDocument) -> String {
    fn name(node: &NetworkNode) -> String {
        let mut s = node.label.as_deref().map(quote).unwrap_or_default();
        if let Some(tag) = &node.hybrid {
            s.push('#');
            s.push_str(tag);
        }
        s
    }
    let mut out = String::new();
    let mut seen = vec![false; doc.nodes.len()];
    // explicit stack of text fragments to avoid deep recursion
    enum Step<'d> {
        Enter(usize, Option<&'d Rational>),
        Text(String),
    }
    let mut stack = vec![Step::Enter(doc.root, None)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Text(t) => out.push_str(&t),
            Step::Enter(v, length) => {
                let tail = {
                    let mut t = name(&doc.nodes[v]);
                    if let Some(l) = length {
                        t.push(':');
                        t.push_str(&format_rational(l));
                    }
                    t
                };
                let kids: Vec<&NetworkEdge> = doc.children(v).collect();
                if seen[v] || kids.is_empty() {
                    seen[v] = true;
                    out.push_str(&tail);
                    continue;
                }
                seen[v] = true;
                out.push('(');
                stack.push(Step::Text(format!("){tail}")));
                for (i, e) in kids.iter().enumerate().rev() {
                    stack.push(Step::Enter(e.child, Some(&e.length)));
                    if i > 0 {
                        stack.push(Step::Text(",".to_string()));
                    }
                }
            }
        }
    }
    out.push(';');
    out
}

/// Levels are the distinct negated stamps; edges spanning several levels are
/// subdivided by regular vertices.
pub fn network_to_reeb<T: Scalar>(doc: &NetworkDocument) -> Result<ReebGraph<T>, FormatError> {
    let heights: Vec<Rational> = doc.nodes.iter().map(|n| -n.stamp.clone()).collect();
    let mut distinct: Vec<Rational> = heights.clone();
    distinct.sort();
    distinct.dedup();
    let levels: Vec<T> = distinct
        .iter()
        .map(|h| {
            T::parse_decimal(&format_rational(h)).ok_or_else(|| FormatError::Schema {
                pointer: String::new(),
                message: format!(
                    "time {} is not representable in this scalar type",
                    format_rational(&-h.clone())
                ),
            })
        })
        .collect::<Result<_, _>>()?;
    let level_of = |h: &Rational| distinct.binary_search(h).expect("present");

    let mut used: BTreeSet<String> = BTreeSet::new();
    let fresh = |wanted: String, used: &mut BTreeSet<String>| {
        let mut id = wanted;
        while used.contains(&id) {
            id.push('\'');
        }
        used.insert(id.clone());
        id
    };
    let mut labelled: BTreeMap<&str, usize> = BTreeMap::new();
    for n in &doc.nodes {
        if let Some(l) = &n.label {
            *labelled.entry(l.as_str()).or_insert(0) += 1;
        }
    }
    let mut ids = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.iter().enumerate() {
        let wanted = match &n.label {
            Some(l) if labelled[l.as_str()] == 1 && !l.starts_with(CUT_PREFIX) => l.clone(),
            _ => format!("n{i}"),
        };
        ids.push(fresh(wanted, &mut used));
    }

    let mut g: ReebGraph<T> = ReebGraph::empty(levels);
    for (i, id) in ids.iter().enumerate() {
        g.vertices[level_of(&heights[i])].push(id.clone());
    }
    for (k, e) in doc.edges.iter().enumerate() {
        let top = level_of(&heights[e.parent]);
        let bottom = level_of(&heights[e.child]);
        let mut lower = ids[e.child].clone();
        for gap in bottom..top {
            let edge_id = if gap == bottom {
                format!("e{k}")
            } else {
                format!("e{k}.{}", gap - bottom)
            };
            let edge_id = fresh(edge_id, &mut used);
            let upper = if gap + 1 == top {
                ids[e.parent].clone()
            } else {
                let v = fresh(format!("e{k}@{}", gap + 1 - bottom), &mut used);
                g.vertices[gap + 1].push(v.clone());
                v
            };
            g.edges[gap].push(Edge::new(edge_id, lower, upper.clone()));
            lower = upper;
        }
    }
    Ok(g.canonicalize())
}

/// Reads a rooted graph back as a network: regular vertices are spliced out
/// and every vertex with several parents becomes a hybrid.
pub fn reeb_to_network<T: Scalar>(g: &ReebGraph<T>) -> Result<NetworkDocument, FormatError> {
    let view = DagView::build(g);
    let roots = view.roots();
    if roots.len() != 1 {
        return Err(ReebError::NotRooted(roots.len()).into());
    }
    let idx = g.index();
    let height = |v: &str| g.levels[idx.vertex_level[v]].to_rational();
    let root = roots[0].to_string();
    let top = height(&root);
    let regular = |v: &str| idx.indeg(v) == 1 && idx.outdeg(v) == 1;

    let mut doc = NetworkDocument {
        nodes: Vec::new(),
        edges: Vec::new(),
        root: 0,
        positions: Vec::new(),
    };
    let mut node_of: HashMap<String, usize> = HashMap::new();
    let mut hybrids = 0usize;
    let add = |doc: &mut NetworkDocument, v: &str, hybrids: &mut usize| {
        let hybrid = (idx.indeg(v) >= 2).then(|| {
            *hybrids += 1;
            format!("H{hybrids}")
        });
        doc.nodes.push(NetworkNode {
            label: Some(v.to_string()),
            hybrid,
            stamp: &top - height(v),
        });
        doc.positions.push(Position::default());
        doc.nodes.len() - 1
    };
    let r = add(&mut doc, &root, &mut hybrids);
    node_of.insert(root.clone(), r);
    let mut stack: Vec<(String, usize)> = vec![(root.clone(), 0)];
    while let Some((v, next)) = stack.pop() {
        let mut below: Vec<&str> = idx.below.get(v.as_str()).cloned().unwrap_or_default();
        below.sort_unstable();
        if next == below.len() {
            continue;
        }
        stack.push((v.clone(), next + 1));
        let mut lower = idx.edge[below[next]].down.as_str();
        while regular(lower) {
            lower = idx.edge[idx.below[lower][0]].down.as_str();
        }
        let length = height(&v) - height(lower);
        let child = match node_of.get(lower) {
            Some(&c) => c,
            None => {
                let c = add(&mut doc, lower, &mut hybrids);
                node_of.insert(lower.to_string(), c);
                stack.push((lower.to_string(), 0));
                c
            }
        };
        doc.edges.push(NetworkEdge {
            parent: node_of[&v],
            child,
            length,
        });
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{betti_euler, build_dag_view};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn cherry_stamps() {
        let doc = parse_enewick("((1:1,2:1):1);").unwrap();
        let stamps: Vec<Rational> = doc.nodes.iter().map(|n| n.stamp.clone()).collect();
        assert_eq!(stamps, vec![q(0), q(1), q(2), q(2)]);
        let g: ReebGraph<i64> = network_to_reeb(&doc).unwrap();
        assert!(g.validate().is_valid(), "{}", g.validate());
        // the root has one child, so it is a leaf of the graph but not a taxon
        let view = build_dag_view(&g);
        assert_eq!(view.outdeg.values().filter(|&&d| d == 0).count(), 2);
        assert_eq!(view.leaves.len(), 3);
        assert_eq!(betti_euler(&g), 0);
    }

    #[test]
    fn disagreeing_paths_are_rejected() {
        let err = parse_enewick("((A:1,(B:1)#H1:1):1,(#H1:2):1);").unwrap_err();
        assert!(
            matches!(err, FormatError::TimeInconsistency { .. }),
            "{err}"
        );
    }

    #[test]
    fn horizontal_edge_is_rejected() {
        // x1 at time 0, x2 and x3 at time 1, with x2 -> x3 of length 0
        let err = parse_enewick("((x3#H1:0)x2:1,x3#H1:1)x1;").unwrap_err();
        assert!(
            matches!(err, FormatError::TimeInconsistency { .. }),
            "{err}"
        );
        assert_eq!(err.position(), Some(Position { line: 1, column: 9 }));
    }

    #[test]
    fn consistent_reticulation() {
        let doc = parse_enewick("((A:2,(B:1)#H1:1):1,(#H1:1)C:1)R;").unwrap();
        assert_eq!(doc.reticulations().len(), 1);
        let g: ReebGraph<i64> = network_to_reeb(&doc).unwrap();
        assert!(g.validate().is_valid(), "{}", g.validate());
        assert_eq!(betti_euler(&g), 1);
        assert_eq!(build_dag_view(&g).check_betti().unwrap(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        type Check = fn(&FormatError) -> bool;
        let cases: [(&str, Check); 7] = [
            (
                "((A:1,B:1);",
                |e| matches!(e, FormatError::UnbalancedParens { pos } if pos.column == 1),
            ),
            ("(A:1,B:1));", |e| {
                matches!(e, FormatError::UnbalancedParens { .. })
            }),
            ("(A:1,B#H1:1);", |e| {
                matches!(e, FormatError::HybridArity { .. })
            }),
            ("(A:1,B);", |e| matches!(e, FormatError::Syntax { .. })),
            ("(A:x,B:1);", |e| matches!(e, FormatError::Syntax { .. })),
            ("(A:1,B:1)", |e| matches!(e, FormatError::Syntax { .. })),
            (
                "(A:1,\nB:-1);",
                |e| matches!(e, FormatError::TimeInconsistency { pos, .. } if pos.line == 2),
            ),
        ];
        for (text, check) in cases {
            let err = parse_enewick(text).unwrap_err();
            assert!(check(&err), "{text}: {err:?}");
            assert!(err.position().is_some());
        }
    }

    #[test]
    fn double_definition_is_an_error() {
        let err = parse_enewick("((x:1)#H1:1,(y:1)#H1:1);").unwrap_err();
        assert!(
            matches!(err, FormatError::HybridArity { ref message, .. } if message == "defined twice")
        );
    }

    #[test]
    fn serializer_round_trips() {
        for text in [
            "((A:1,B:1)C:1,D:2)R;",
            "((A:2,(B:1)#H1:1):1,(#H1:1)C:1)R;",
            "(('odd name':1,'it''s':1):0.5)r;",
            "((#LGT3:1)a:1,(x:1)#LGT3:2)r;",
        ] {
            let doc = parse_enewick(text).unwrap();
            let written = write_enewick(&doc);
            let again = parse_enewick(&written).unwrap();
            assert_eq!(again, doc, "{text} -> {written}");
            assert_eq!(write_enewick(&again), written);
        }
    }

    #[test]
    fn hybrid_defined_after_reference() {
        let doc = parse_enewick("((#H1:1)a:1,(x:1)#H1:2)r;").unwrap();
        let written = write_enewick(&doc);
        assert_eq!(
            written,
            "((#H1:1)a:1,#H1:2)r;".replace("(#H1:1)", "((x:1)#H1:1)")
        );
    }

    #[test]
    fn reeb_round_trip() {
        let doc = parse_enewick("((A:3,(B:1)#H1:1):1,(#H1:1)C:1)R;").unwrap();
        let g: ReebGraph<i64> = network_to_reeb(&doc).unwrap();
        let back = reeb_to_network(&g).unwrap();
        let g2: ReebGraph<i64> = network_to_reeb(&back).unwrap();
        assert!(crate::iso::reeb_iso(&g, &g2));
        let stamps: BTreeSet<Rational> = back.nodes.iter().map(|n| n.stamp.clone()).collect();
        let orig: BTreeSet<Rational> = doc.nodes.iter().map(|n| n.stamp.clone()).collect();
        assert_eq!(stamps, orig);
    }

    #[test]
    fn fractional_times_need_a_rational_scalar() {
        let doc = parse_enewick("(a:0.5,b:1);").unwrap();
        assert!(network_to_reeb::<i64>(&doc).is_err());
        assert!(network_to_reeb::<Rational>(&doc).is_ok());
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let text = format!("{}a:1{};", "(".repeat(5000), "):1".repeat(5000));
        assert!(parse_enewick(&text).is_err());
    }
}
