//! Labeled-bracketing constituency trees.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    /// Preterminal: a part-of-speech tag over a single token.
    Leaf {
        tag: String,
        token: String,
    },
    Node {
        label: String,
        children: Vec<Tree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into() }
    }
}

impl Tree {
    pub fn leaf(tag: impl Into<String>, token: impl Into<String>) -> Tree {
        Tree::Leaf { tag: tag.into(), token: token.into() }
    }

    pub fn node(label: impl Into<String>, children: Vec<Tree>) -> Tree {
        Tree::Node { label: label.into(), children }
    }

    pub fn label(&self) -> &str {
        match self {
            Tree::Leaf { tag, .. } => tag,
            Tree::Node { label, .. } => label,
        }
    }

    /// Label with function tags and indices stripped: `NP-SBJ-1` → `NP`.
    /// Labels starting with `-` (`-NONE-`) are kept whole.
    pub fn category(&self) -> &str {
        category(self.label())
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Leaf { .. } => &[],
            Tree::Node { children, .. } => children,
        }
    }

    pub fn token(&self) -> Option<&str> {
        match self {
            Tree::Leaf { token, .. } => Some(token),
            Tree::Node { .. } => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf { .. })
    }

    /// Pre-order traversal.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }
}

pub fn category(label: &str) -> &str {
    if label.starts_with('-') {
        return label;
    }
    label.split(['-', '=']).next().unwrap_or(label)
}

pub struct Preorder<'a> {
    stack: Vec<&'a Tree>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a Tree;

    fn next(&mut self) -> Option<&'a Tree> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children().iter().rev());
        Some(node)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf { tag, token } => write!(f, "({tag} {token})"),
            Tree::Node { label, children } => {
                write!(f, "({label}")?;
                for child in children {
                    write!(f, " {child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parse a single labeled bracketing such as `(VP (V read) (NP (N article)))`.
pub fn parse_bracketed_tree(text: &str) -> Result<Tree, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    parser.skip_ws();
    if parser.at_end() {
        return Err(ParseError::new(0, "empty input"));
    }
    let tree = parser.tree()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(ParseError::new(parser.pos, "trailing input after tree"));
    }
    Ok(tree)
}

/// Split a treebank into its blank-line-separated blocks and parse each.
/// Errors carry the offset within their own block.
pub fn parse_treebank(text: &str) -> impl Iterator<Item = Result<Tree, ParseError>> + '_ {
    blocks(text).map(parse_bracketed_tree)
}

fn blocks(text: &str) -> impl Iterator<Item = &str> {
    let mut rest = text;
    std::iter::from_fn(move || loop {
        if rest.is_empty() {
            return None;
        }
        let (block, tail) = split_block(rest);
        rest = tail;
        if !block.trim().is_empty() {
            return Some(block);
        }
    })
}

fn split_block(text: &str) -> (&str, &str) {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if line.trim().is_empty() && offset > 0 {
            return (&text[..offset], &text[offset + line.len()..]);
        }
        offset += line.len();
    }
    (text, "")
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn atom(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(')') => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(ParseError::new(self.pos, "expected ')'")),
            None => Err(ParseError::new(self.pos, "unexpected end of input, unbalanced parentheses")),
        }
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        match self.peek() {
            Some('(') => self.pos += 1,
            Some(_) => return Err(ParseError::new(self.pos, "expected '('")),
            None => return Err(ParseError::new(self.pos, "unexpected end of input")),
        }
        self.skip_ws();
        let label_at = self.pos;
        let label = self.atom();
        if label.is_empty() {
            return Err(ParseError::new(label_at, "empty label"));
        }
        self.skip_ws();
        match self.peek() {
            None => Err(ParseError::new(self.pos, "unexpected end of input, unbalanced parentheses")),
            Some(')') => Err(ParseError::new(self.pos, format!("node '{label}' has neither children nor token"))),
            Some('(') => {
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some('(') => children.push(self.tree()?),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Tree::node(label, children));
                        }
                        Some(_) => return Err(ParseError::new(self.pos, "token mixed with child constituents")),
                        None => {
                            return Err(ParseError::new(self.pos, "unexpected end of input, unbalanced parentheses"))
                        }
                    }
                }
            }
            Some(_) => {
                let token = self.atom();
                self.expect_close()?;
                Ok(Tree::leaf(label, token))
            }
        }
    }
}
