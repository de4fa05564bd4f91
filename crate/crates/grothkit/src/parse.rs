//! Whitespace-separated UTF-8 input formats.
//!
//! ```text
//! dense m n      followed by m·n reals (row-major)
//! coo m n nnz    followed by nnz lines  i j v   (duplicates are summed)
//! graph n m      followed by m lines    u v [w] (w defaults to 1)
//! tensor3 n nnz  followed by nnz lines  i j k c (c ∈ {−1, 1})
//! ```
//!
//! All indices are 0-based. Errors carry the 1-based line number of the
//! offending token.

use crate::error::{Error, Result};
use crate::types::{DenseMatrix, Digraph, SparseTensor3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Dense,
    Coo,
    Graph,
    Tensor3,
}

impl InputKind {
    pub fn keyword(self) -> &'static str {
        match self {
            InputKind::Dense => "dense",
            InputKind::Coo => "coo",
            InputKind::Graph => "graph",
            InputKind::Tensor3 => "tensor3",
        }
    }

    fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "dense" => Some(InputKind::Dense),
            "coo" => Some(InputKind::Coo),
            "graph" => Some(InputKind::Graph),
            "tensor3" => Some(InputKind::Tensor3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum InputObject {
    Matrix(DenseMatrix),
    Graph(Digraph),
    Tensor(SparseTensor3),
}

impl InputObject {
    pub fn kind_name(&self) -> &'static str {
        match self {
            InputObject::Matrix(_) => "matrix",
            InputObject::Graph(_) => "graph",
            InputObject::Tensor(_) => "tensor3",
        }
    }
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            // '#' starts a comment running to end of line
            let body = line.split('#').next().unwrap_or("");
            for tok in body.split_whitespace() {
                items.push((lineno + 1, tok));
            }
        }
        Self { items, pos: 0 }
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(1, |&(l, _)| l)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self
            .items
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::Parse {
                line: self.last_line(),
                msg: format!("unexpected end of input, expected {what}"),
            })?;
        self.pos += 1;
        Ok(item)
    }

    fn next_usize(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, tok) = self.next(what)?;
        let v = tok.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("expected {what} (nonnegative integer), got `{tok}`"),
        })?;
        Ok((line, v))
    }

    fn next_f64(&mut self, what: &str) -> Result<(usize, f64)> {
        let (line, tok) = self.next(what)?;
        let v = tok.parse::<f64>().map_err(|_| Error::Parse {
            line,
            msg: format!("expected {what} (real number), got `{tok}`"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line,
                msg: format!("non-finite number `{tok}`"),
            });
        }
        Ok((line, v))
    }

    fn expect_end(&mut self) -> Result<()> {
        if let Some(&(line, tok)) = self.items.get(self.pos) {
            return Err(Error::Parse {
                line,
                msg: format!("trailing token `{tok}`"),
            });
        }
        Ok(())
    }
}

/// Parse `text` as the given kind. The header keyword must match `kind`.
pub fn parse_input(text: &str, kind: InputKind) -> Result<InputObject> {
    let mut toks = Tokens::new(text);
    let (line, word) = toks.next("format keyword")?;
    if word != kind.keyword() {
        return Err(Error::Parse {
            line,
            msg: format!("expected `{}` header, got `{word}`", kind.keyword()),
        });
    }
    parse_body(&mut toks, kind)
}

/// Parse dispatching on the header keyword.
pub fn parse_auto(text: &str) -> Result<InputObject> {
    let mut toks = Tokens::new(text);
    let (line, word) = toks.next("format keyword")?;
    let kind = InputKind::from_keyword(word).ok_or_else(|| Error::Parse {
        line,
        msg: format!("unknown format keyword `{word}` (expected dense, coo, graph or tensor3)"),
    })?;
    parse_body(&mut toks, kind)
}

fn parse_body(toks: &mut Tokens<'_>, kind: InputKind) -> Result<InputObject> {
    let obj = match kind {
        InputKind::Dense => {
            let (line, m) = toks.next_usize("row count")?;
            let (_, n) = toks.next_usize("column count")?;
            if m == 0 || n == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "dimensions must be positive".into(),
                });
            }
            let mut entries = Vec::with_capacity(m * n);
            for _ in 0..m * n {
                entries.push(toks.next_f64("matrix entry")?.1);
            }
            toks.expect_end()?;
            InputObject::Matrix(DenseMatrix::new(m, n, entries).map_err(invalid_at(line))?)
        }
        InputKind::Coo => {
            let (line, m) = toks.next_usize("row count")?;
            let (_, n) = toks.next_usize("column count")?;
            let (_, nnz) = toks.next_usize("nonzero count")?;
            let mut a = DenseMatrix::zeros(m.max(1), n.max(1));
            if m == 0 || n == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "dimensions must be positive".into(),
                });
            }
            for _ in 0..nnz {
                let (il, i) = toks.next_usize("row index")?;
                let (jl, j) = toks.next_usize("column index")?;
                let (_, v) = toks.next_f64("value")?;
                if i >= m {
                    return Err(Error::Parse {
                        line: il,
                        msg: format!("row index {i} out of range (m={m})"),
                    });
                }
                if j >= n {
                    return Err(Error::Parse {
                        line: jl,
                        msg: format!("column index {j} out of range (n={n})"),
                    });
                }
                a.set(i, j, a.get(i, j) + v);
            }
            toks.expect_end()?;
            InputObject::Matrix(a)
        }
        InputKind::Graph => {
            let (line, n) = toks.next_usize("vertex count")?;
            let (_, m) = toks.next_usize("arc count")?;
            let mut arcs = Vec::with_capacity(m);
            for _ in 0..m {
                // arcs are line-based: `u v` or `u v w` on one line
                let (_, u) = toks.next_usize("tail vertex")?;
                let (vl, v) = toks.next_usize("head vertex")?;
                let w = match toks.items.get(toks.pos) {
                    Some(&(wl, _)) if wl == vl => toks.next_f64("arc weight")?.1,
                    _ => 1.0,
                };
                arcs.push((u, v, w));
            }
            toks.expect_end()?;
            InputObject::Graph(Digraph::new(n, arcs).map_err(invalid_at(line))?)
        }
        InputKind::Tensor3 => {
            let (line, n) = toks.next_usize("variable count")?;
            let (_, nnz) = toks.next_usize("entry count")?;
            let mut entries = Vec::with_capacity(nnz);
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..nnz {
                let (il, i) = toks.next_usize("index i")?;
                let (_, j) = toks.next_usize("index j")?;
                let (_, k) = toks.next_usize("index k")?;
                let (cl, c) = toks.next("coefficient")?;
                let c: i8 = c.parse().map_err(|_| Error::Parse {
                    line: cl,
                    msg: format!("expected coefficient -1 or 1, got `{c}`"),
                })?;
                if i >= n || j >= n || k >= n {
                    return Err(Error::Parse {
                        line: il,
                        msg: format!("tensor index ({i},{j},{k}) out of range (n={n})"),
                    });
                }
                if i == j || j == k || i == k {
                    return Err(Error::Parse {
                        line: il,
                        msg: format!("tensor indices ({i},{j},{k}) must be distinct"),
                    });
                }
                if !seen.insert((i, j, k)) {
                    return Err(Error::Parse {
                        line: il,
                        msg: format!("duplicate tensor triple ({i},{j},{k})"),
                    });
                }
                entries.push((i, j, k, c));
            }
            toks.expect_end()?;
            InputObject::Tensor(SparseTensor3::new(n, entries).map_err(invalid_at(line))?)
        }
    };
    Ok(obj)
}

fn invalid_at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Invalid(msg) => Error::Parse { line, msg },
        other => other,
    }
}
