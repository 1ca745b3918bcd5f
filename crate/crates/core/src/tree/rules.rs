use std::fmt;

use super::{laplace, TreeNode};
use crate::Scalar;

/// One step of a root-to-leaf path: `attribute <= threshold` or
/// `attribute > threshold`.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition<T> {
    pub attribute: usize,
    pub threshold: T,
    pub at_most: bool,
    /// The branch a missing value takes at this node.
    pub takes_missing: bool,
}

impl<T: Scalar> Condition<T> {
    pub fn matches(&self, row: &[Option<T>]) -> bool {
        match row[self.attribute] {
            Some(v) => (v <= self.threshold) == self.at_most,
            None => self.takes_missing,
        }
    }

    /// The half-open interval the condition admits, as `(lower, upper]`.
    pub fn interval(&self) -> (Option<T>, Option<T>) {
        if self.at_most {
            (None, Some(self.threshold))
        } else {
            (Some(self.threshold), None)
        }
    }
}

/// A conjunction of path conditions implying a class decision.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    pub conditions: Vec<Condition<T>>,
    pub class: usize,
    pub counts: Vec<usize>,
}

impl<T: Scalar> Rule<T> {
    pub fn matches(&self, row: &[Option<T>]) -> bool {
        self.conditions.iter().all(|c| c.matches(row))
    }

    /// Decision flag for class `class`: 1 when the rule concludes `class`.
    pub fn decides(&self, class: usize) -> bool {
        self.class == class
    }
}

/// One rule per leaf, in left-to-right leaf order.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet<T> {
    pub rules: Vec<Rule<T>>,
}

impl<T: Scalar> RuleSet<T> {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn matching(&self, row: &[Option<T>]) -> Option<&Rule<T>> {
        self.rules.iter().find(|r| r.matches(row))
    }

    /// Class and Laplace-smoothed distribution of the first matching rule.
    pub fn classify(&self, row: &[Option<T>]) -> Option<(usize, Vec<T>)> {
        self.matching(row).map(|r| (r.class, laplace(&r.counts)))
    }

    /// Human-readable if-then lines; `names` maps attribute index to a label.
    pub fn render(
        &self,
        names: &dyn Fn(usize) -> String,
        classes: &dyn Fn(usize) -> String,
    ) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            if rule.conditions.is_empty() {
                out.push_str("if true");
            } else {
                let parts: Vec<String> = rule
                    .conditions
                    .iter()
                    .map(|c| {
                        let op = if c.at_most { "<=" } else { ">" };
                        format!("{} {op} {}", names(c.attribute), c.threshold)
                    })
                    .collect();
                out.push_str("if ");
                out.push_str(&parts.join(" and "));
            }
            let counts: Vec<String> = rule.counts.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                " then {} [{}]\n",
                classes(rule.class),
                counts.join(" ")
            ));
        }
        out
    }
}

impl<T: Scalar> fmt::Display for RuleSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.render(&|a| format!("f{}", a + 1), &|c| format!("class {}", c + 1));
        f.write_str(&text)
    }
}

pub fn extract_rules<T: Scalar>(tree: &TreeNode<T>) -> RuleSet<T> {
    fn walk<T: Scalar>(node: &TreeNode<T>, path: &mut Vec<Condition<T>>, out: &mut Vec<Rule<T>>) {
        match node {
            TreeNode::Leaf { counts, class } => out.push(Rule {
                conditions: path.clone(),
                class: *class,
                counts: counts.clone(),
            }),
            TreeNode::Internal {
                attribute,
                threshold,
                left,
                right,
            } => {
                let missing_left = TreeNode::missing_goes_left(left, right);
                for (child, at_most) in [(left, true), (right, false)] {
                    path.push(Condition {
                        attribute: *attribute,
                        threshold: *threshold,
                        at_most,
                        takes_missing: missing_left == at_most,
                    });
                    walk(child, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut rules = Vec::new();
    walk(tree, &mut Vec::new(), &mut rules);
    RuleSet { rules }
}
