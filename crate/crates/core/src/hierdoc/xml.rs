//! A deliberately small XML subset: nested elements and text.
//!
//! Supported: `<name>`, `</name>`, `<name/>`, character data. Rejected with
//! a byte offset: attributes, entities (`&`), comments, processing
//! instructions, CDATA, text outside the root, several roots, mismatched
//! tags and NUL bytes.

use crate::error::{Error, Result};

/// Tag given to the leaves created for text that sits between elements.
pub const TEXT_TAG: &str = "#text";

/// One node of the parsed tree, in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XmlNode {
    pub tag: String,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Text of a leaf; empty for inner nodes.
    pub text: Vec<u8>,
}

enum Item {
    Elem(usize),
    Text(Vec<u8>),
}

struct Raw {
    name: String,
    items: Vec<Item>,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Xml { pos, msg: msg.into() }
}

fn name_at(input: &[u8], mut pos: usize) -> Result<(String, usize)> {
    let start = pos;
    while pos < input.len() && (input[pos].is_ascii_alphanumeric() || matches!(input[pos], b'_' | b'-' | b'.')) {
        pos += 1;
    }
    if pos == start || !(input[start].is_ascii_alphabetic() || input[start] == b'_') {
        return Err(err(start, "expected a tag name"));
    }
    Ok((String::from_utf8_lossy(&input[start..pos]).into_owned(), pos))
}

fn skip_ws(input: &[u8], mut pos: usize) -> usize {
    while pos < input.len() && input[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

/// Parses `input` into preorder nodes. Elements without element children
/// become leaves holding their text; in mixed content, every text run that
/// is not pure whitespace becomes a [`TEXT_TAG`] leaf.
pub fn parse(input: &[u8]) -> Result<Vec<XmlNode>> {
    let mut raws: Vec<Raw> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut root: Option<usize> = None;
    let mut text: Vec<u8> = Vec::new();
    let mut pos = 0;
    while pos < input.len() {
        let c = input[pos];
        if c != b'<' {
            if stack.is_empty() {
                if !c.is_ascii_whitespace() {
                    return Err(err(pos, "text outside the root element"));
                }
            } else if c == b'&' {
                return Err(err(pos, "entities are not supported"));
            } else if c == 0 {
                return Err(err(pos, "NUL byte in text"));
            } else {
                text.push(c);
            }
            pos += 1;
            continue;
        }
        let tag_start = pos;
        pos += 1;
        match input.get(pos) {
            Some(b'/') => {
                let (name, after) = name_at(input, pos + 1)?;
                pos = skip_ws(input, after);
                if input.get(pos) != Some(&b'>') {
                    return Err(err(pos, "expected '>'"));
                }
                pos += 1;
                let Some(top) = stack.pop() else {
                    return Err(err(tag_start, format!("unexpected closing tag </{name}>")));
                };
                if raws[top].name != name {
                    return Err(err(tag_start, format!("</{name}> does not close <{}>", raws[top].name)));
                }
                if !text.is_empty() {
                    raws[top].items.push(Item::Text(std::mem::take(&mut text)));
                }
            }
            Some(b'!') | Some(b'?') => {
                return Err(err(tag_start, "comments, declarations and processing instructions are not supported"));
            }
            _ => {
                let (name, after) = name_at(input, pos)?;
                pos = skip_ws(input, after);
                let self_closing = match input.get(pos) {
                    Some(b'>') => false,
                    Some(b'/') if input.get(pos + 1) == Some(&b'>') => {
                        pos += 1;
                        true
                    }
                    Some(_) => return Err(err(pos, "attributes are not supported")),
                    None => return Err(err(pos, "unterminated tag")),
                };
                pos += 1;
                let id = raws.len();
                raws.push(Raw {
                    name,
                    items: Vec::new(),
                });
                match stack.last() {
                    Some(&top) => {
                        if !text.is_empty() {
                            raws[top].items.push(Item::Text(std::mem::take(&mut text)));
                        }
                        raws[top].items.push(Item::Elem(id));
                    }
                    None if root.is_some() => return Err(err(tag_start, "more than one root element")),
                    None => root = Some(id),
                }
                if !self_closing {
                    stack.push(id);
                }
            }
        }
    }
    if let Some(&top) = stack.last() {
        return Err(err(input.len(), format!("unclosed element <{}>", raws[top].name)));
    }
    let Some(root) = root else {
        return Err(err(0, "no root element"));
    };
    let mut nodes = Vec::with_capacity(raws.len());
    flatten(&mut raws, root, None, &mut nodes);
    Ok(nodes)
}

enum Work {
    Elem(usize, Option<usize>),
    Text(Vec<u8>, usize),
}

fn flatten(raws: &mut [Raw], id: usize, parent: Option<usize>, out: &mut Vec<XmlNode>) {
    // Explicit stack so that deep documents cannot overflow the call stack.
    let mut todo = vec![Work::Elem(id, parent)];
    while let Some(work) = todo.pop() {
        let me = out.len();
        let (node, items) = match work {
            Work::Text(text, parent) => (
                XmlNode {
                    tag: TEXT_TAG.to_string(),
                    parent: Some(parent),
                    children: Vec::new(),
                    text,
                },
                Vec::new(),
            ),
            Work::Elem(id, parent) => (
                XmlNode {
                    tag: std::mem::take(&mut raws[id].name),
                    parent,
                    children: Vec::new(),
                    text: Vec::new(),
                },
                std::mem::take(&mut raws[id].items),
            ),
        };
        if let Some(p) = node.parent {
            out[p].children.push(me);
        }
        out.push(node);
        if !items.iter().any(|it| matches!(it, Item::Elem(_))) {
            for it in items {
                if let Item::Text(t) = it {
                    out[me].text.extend(t);
                }
            }
            continue;
        }
        for it in items.into_iter().rev() {
            match it {
                Item::Text(t) if t.iter().all(u8::is_ascii_whitespace) => {}
                Item::Text(t) => todo.push(Work::Text(t, me)),
                Item::Elem(e) => todo.push(Work::Elem(e, Some(me))),
            }
        }
    }
}
