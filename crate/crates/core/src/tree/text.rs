//! Indented text form of a tree, one node per line:
//!
//! ```text
//! f3 <= 1.5
//! |   leaf: 4 0 0 0 0 0
//! f3 > 1.5
//! |   leaf: 0 2 0 0 0 1
//! ```
//!
//! Attributes are written 1-based; thresholds use the shortest decimal that
//! reads back to the same value.

use std::fmt::Write as _;

use super::TreeNode;
use crate::bayes::parse_num;
use crate::error::{Error, Result};
use crate::Scalar;

const INDENT: &str = "|   ";
const KIND: &str = "tree";

impl<T: Scalar> TreeNode<T> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_node(self, 0, &mut out);
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<(usize, usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let mut depth = 0;
                let mut rest = l;
                while let Some(r) = rest.strip_prefix(INDENT) {
                    depth += 1;
                    rest = r;
                }
                (i + 1, depth, rest.trim())
            })
            .collect();
        let mut pos = 0;
        let node = parse_node(&lines, &mut pos, 0)?;
        if let Some(&(no, _, _)) = lines.get(pos) {
            return Err(Error::format(KIND, no, "trailing lines"));
        }
        Ok(node)
    }
}

fn write_node<T: Scalar>(node: &TreeNode<T>, depth: usize, out: &mut String) {
    let pad = INDENT.repeat(depth);
    match node {
        TreeNode::Leaf { counts, .. } => {
            let counts: Vec<String> = counts.iter().map(usize::to_string).collect();
            writeln!(out, "{pad}leaf: {}", counts.join(" ")).unwrap();
        }
        TreeNode::Internal {
            attribute,
            threshold,
            left,
            right,
        } => {
            let t = threshold.as_f64();
            writeln!(out, "{pad}f{} <= {t}", attribute + 1).unwrap();
            write_node(left, depth + 1, out);
            writeln!(out, "{pad}f{} > {t}", attribute + 1).unwrap();
            write_node(right, depth + 1, out);
        }
    }
}

fn parse_condition(s: &str, op: &str, no: usize) -> Result<(usize, f64)> {
    let (attr, t) = s
        .split_once(op)
        .ok_or_else(|| Error::format(KIND, no, format!("expected '{op}'")))?;
    let attr = attr
        .trim()
        .strip_prefix('f')
        .ok_or_else(|| Error::format(KIND, no, "attribute must look like f<number>"))?;
    let attr: usize = parse_num(attr, KIND, no)?;
    if attr == 0 {
        return Err(Error::format(KIND, no, "attributes are numbered from 1"));
    }
    Ok((attr - 1, parse_num(t, KIND, no)?))
}

fn parse_node<T: Scalar>(
    lines: &[(usize, usize, &str)],
    pos: &mut usize,
    depth: usize,
) -> Result<TreeNode<T>> {
    let &(no, d, line) = lines
        .get(*pos)
        .ok_or_else(|| Error::format(KIND, lines.last().map_or(0, |l| l.0), "truncated tree"))?;
    if d != depth {
        return Err(Error::format(
            KIND,
            no,
            format!("expected depth {depth}, found {d}"),
        ));
    }
    *pos += 1;
    if let Some(counts) = line.strip_prefix("leaf:") {
        let counts = counts
            .split_whitespace()
            .map(|c| parse_num::<usize>(c, KIND, no))
            .collect::<Result<Vec<_>>>()?;
        if counts.is_empty() {
            return Err(Error::format(KIND, no, "leaf without counts"));
        }
        return Ok(TreeNode::leaf(counts));
    }

    let (attribute, threshold) = parse_condition(line, "<=", no)?;
    let left = parse_node(lines, pos, depth + 1)?;
    let &(no2, d2, line2) = lines
        .get(*pos)
        .ok_or_else(|| Error::format(KIND, no, "missing right branch"))?;
    if d2 != depth {
        return Err(Error::format(KIND, no2, "misplaced right branch"));
    }
    let (attr2, threshold2) = parse_condition(line2, ">", no2)?;
    if attr2 != attribute || threshold2 != threshold {
        return Err(Error::format(
            KIND,
            no2,
            "right branch does not match its left branch",
        ));
    }
    *pos += 1;
    let right = parse_node(lines, pos, depth + 1)?;
    Ok(TreeNode::Internal {
        attribute,
        threshold: T::of(threshold),
        left: Box::new(left),
        right: Box::new(right),
    })
}
