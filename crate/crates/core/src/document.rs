//! Algebra files: a line-oriented DSL and an equivalent JSON form.
//!
//! ```text
//! # comment
//! name heisenberg3
//! dim 3
//! field rational
//! bracket 1 2 = 1*x3
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::literal::{scan_gauss, Gauss};
use crate::field::rational::format_rational;
use crate::field::{parse_gauss, FieldElement, Rational, TowerContext};
use crate::lie::LieAlgebra;
use crate::matrix::MatrixK;
use num_traits::Zero;

/// Largest dimension a document may declare.
pub const MAX_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Gaussian,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Rational => "rational",
            FieldTag::Gaussian => "gaussian",
        }
    }
}

/// `[x_i, x_j] = Σ c_k x_k`, 1-based, with `i < j` and terms sorted by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketDecl {
    pub lhs: (usize, usize),
    pub rhs: Vec<(usize, Gauss)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub field: FieldTag,
    /// Leading `#` lines, without the marker.
    pub comments: Vec<String>,
    pub brackets: Vec<BracketDecl>,
}

fn parse_err(line: usize, col: usize, expected: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        expected: expected.into(),
    }
}

/// serde_json reports column 0 for a position at the start of a line.
fn json_err(e: serde_json::Error) -> Error {
    parse_err(e.line().max(1), e.column().max(1), e.to_string())
}

fn consistency(line: usize, message: impl Into<String>) -> Error {
    Error::Consistency {
        line,
        message: message.into(),
    }
}

fn is_gaussian(g: &Gauss) -> bool {
    !g.im.is_zero()
}

fn gauss_add(a: &Gauss, b: &Gauss) -> Gauss {
    Gauss {
        re: &a.re + &b.re,
        im: &a.im + &b.im,
    }
}

fn gauss_neg(a: &Gauss) -> Gauss {
    Gauss {
        re: -a.re.clone(),
        im: -a.im.clone(),
    }
}

fn gauss_to_string(g: &Gauss) -> String {
    let i = FieldElement::from_rational(g.im.clone());
    let re = FieldElement::from_rational(g.re.clone());
    if g.im.is_zero() {
        return format_rational(&g.re);
    }
    let z = re + i * TowerContext::gaussian().imaginary_unit().expect("gaussian");
    z.to_string()
}

/// A bracket as written, before normalization.
struct RawBracket {
    line: usize,
    lhs: (usize, usize),
    /// Basis index, coefficient and source column of each term.
    rhs: Vec<(usize, Gauss, usize)>,
}

/// Turns raw declarations into canonical form and runs every consistency check.
fn assemble(
    name: String,
    dim: usize,
    field: FieldTag,
    comments: Vec<String>,
    raw: Vec<RawBracket>,
) -> Result<AlgebraDocument> {
    let mut seen: BTreeMap<(usize, usize), (usize, BTreeMap<usize, Gauss>)> = BTreeMap::new();
    let mut declared = std::collections::HashSet::new();
    for b in raw {
        let (i, j) = b.lhs;
        for k in [i, j] {
            if k == 0 || k > dim {
                return Err(consistency(b.line, format!("basis index {k} outside 1..{dim}")));
            }
        }
        if i == j {
            return Err(consistency(b.line, format!("bracket of x{i} with itself")));
        }
        if !declared.insert(b.lhs) {
            return Err(consistency(b.line, format!("bracket [x{i}, x{j}] declared twice")));
        }
        let mut rhs: BTreeMap<usize, Gauss> = BTreeMap::new();
        for (k, c, _col) in b.rhs {
            if k == 0 || k > dim {
                return Err(consistency(b.line, format!("basis index {k} outside 1..{dim}")));
            }
            if field == FieldTag::Rational && is_gaussian(&c) {
                return Err(consistency(
                    b.line,
                    "Gaussian coefficient in a document with field rational",
                ));
            }
            let sum = match rhs.get(&k) {
                Some(prev) => gauss_add(prev, &c),
                None => c,
            };
            rhs.insert(k, sum);
        }
        rhs.retain(|_, c| !(c.re.is_zero() && c.im.is_zero()));
        let (key, rhs) = if i < j {
            ((i, j), rhs)
        } else {
            ((j, i), rhs.into_iter().map(|(k, c)| (k, gauss_neg(&c))).collect())
        };
        if let Some((first, prev)) = seen.get(&key) {
            if *prev != rhs {
                return Err(consistency(
                    b.line,
                    format!(
                        "[x{i}, x{j}] is not the negation of the bracket declared on line {first}"
                    ),
                ));
            }
        }
        seen.entry(key).or_insert((b.line, rhs));
    }
    let brackets = seen
        .into_iter()
        .filter(|(_, (_, rhs))| !rhs.is_empty())
        .map(|(lhs, (_, rhs))| BracketDecl {
            lhs,
            rhs: rhs.into_iter().collect(),
        })
        .collect();
    Ok(AlgebraDocument {
        name,
        dim,
        field,
        comments,
        brackets,
    })
}

/// Characters of a line with their 1-based columns, whitespace removed.
fn compact(s: &str, first_col: usize) -> Vec<(char, usize)> {
    s.chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(k, c)| (c, first_col + k))
        .collect()
}

fn parse_rhs(
    line_no: usize,
    toks: &[(char, usize)],
    end_col: usize,
) -> Result<Vec<(usize, Gauss, usize)>> {
    let chars: Vec<char> = toks.iter().map(|t| t.0).collect();
    let col = |p: usize| toks.get(p).map_or(end_col, |t| t.1);
    let mut pos = 0;
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut negate = false;
        if !first {
            match chars.get(pos) {
                None => break,
                Some('+') => pos += 1,
                Some('-') => {
                    negate = true;
                    pos += 1;
                }
                Some(_) => return Err(parse_err(line_no, col(pos), "'+' or '-' between terms")),
            }
        }
        if first && matches!(chars.get(pos), Some('+' | '-')) && chars.get(pos + 1) == Some(&'x') {
            negate = chars[pos] == '-';
            pos += 1;
        }
        first = false;
        let term_col = col(pos);
        let coeff = if chars.get(pos) == Some(&'x') {
            Gauss {
                re: Rational::from_integer(1.into()),
                im: Rational::zero(),
            }
        } else {
            match scan_gauss(&chars[pos..]) {
                Ok(Some((n, g))) => {
                    pos += n;
                    if chars.get(pos) != Some(&'*') {
                        return Err(parse_err(line_no, col(pos), "'*' after coefficient"));
                    }
                    pos += 1;
                    g
                }
                Ok(None) => return Err(parse_err(line_no, col(pos), "term (coefficient or x<k>)")),
                Err(e) => return Err(parse_err(line_no, col(pos + e.offset), e.expected)),
            }
        };
        if chars.get(pos) != Some(&'x') {
            return Err(parse_err(line_no, col(pos), "'x' followed by a basis index"));
        }
        pos += 1;
        let start = pos;
        while chars.get(pos).is_some_and(char::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(parse_err(line_no, col(pos), "basis index"));
        }
        let digits: String = chars[start..pos].iter().collect();
        let k: usize = digits
            .parse()
            .map_err(|_| parse_err(line_no, col(start), "basis index of reasonable size"))?;
        let coeff = if negate { gauss_neg(&coeff) } else { coeff };
        out.push((k, coeff, term_col));
    }
    Ok(out)
}

fn parse_index(line: usize, tok: Option<(usize, &str)>, end_col: usize, what: &str) -> Result<usize> {
    match tok {
        Some((c, t)) => t
            .parse::<usize>()
            .map_err(|_| parse_err(line, c, format!("{what} (non-negative integer)"))),
        None => Err(parse_err(line, end_col, what.to_string())),
    }
}

/// Whitespace-separated words with their 1-based columns.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, (b, c)) in s.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((k, b)),
            (true, Some((sk, sb))) => {
                out.push((sk + 1, &s[sb..b]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sk, sb)) = start {
        out.push((sk + 1, &s[sb..]));
    }
    out
}

pub fn parse_dsl(input: &str) -> Result<AlgebraDocument> {
    let mut name = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut field = None;
    let mut comments = Vec::new();
    let mut raw = Vec::new();
    let mut in_header = true;
    for (idx, line) in input.lines().enumerate() {
        let ln = idx + 1;
        let end_col = line.chars().count() + 1;
        let trimmed = line.trim_start();
        if let Some(c) = trimmed.strip_prefix('#') {
            if in_header {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        in_header = false;
        let is_bracket = words(line)[0].1 == "bracket";
        let (head, rest) = match line.find('=').filter(|_| is_bracket) {
            Some(b) => (&line[..b], Some(b)),
            None => (line, None),
        };
        let ws = words(head);
        let (kcol, kw) = ws[0];
        match kw {
            "name" | "dim" | "field" => {
                if ws.len() != 2 {
                    let c = ws.get(2).map_or(end_col, |w| w.0);
                    return Err(parse_err(ln, c, format!("exactly one value after '{kw}'")));
                }
                let (vcol, v) = ws[1];
                match kw {
                    "name" => {
                        if name.is_some() {
                            return Err(consistency(ln, "name declared twice"));
                        }
                        name = Some(v.to_string());
                    }
                    "dim" => {
                        if dim.is_some() {
                            return Err(consistency(ln, "dim declared twice"));
                        }
                        let d = parse_index(ln, Some((vcol, v)), end_col, "dimension")?;
                        if d == 0 || d > MAX_DIM {
                            return Err(consistency(ln, format!("dim must be in 1..={MAX_DIM}")));
                        }
                        dim = Some((d, ln));
                    }
                    _ => {
                        if field.is_some() {
                            return Err(consistency(ln, "field declared twice"));
                        }
                        field = Some(match v {
                            "rational" => FieldTag::Rational,
                            "gaussian" => FieldTag::Gaussian,
                            _ => return Err(parse_err(ln, vcol, "'rational' or 'gaussian'")),
                        });
                    }
                }
            }
            "bracket" => {
                let Some(eq) = rest else {
                    return Err(parse_err(ln, end_col, "'='"));
                };
                let i = parse_index(ln, ws.get(1).copied(), end_col, "first basis index")?;
                let j = parse_index(ln, ws.get(2).copied(), end_col, "second basis index")?;
                if let Some(&(c, _)) = ws.get(3) {
                    return Err(parse_err(ln, c, "'='"));
                }
                let eq_col = line[..eq].chars().count() + 1;
                let toks = compact(&line[eq + 1..], eq_col + 1);
                if toks.is_empty() {
                    return Err(parse_err(ln, end_col, "term after '='"));
                }
                let rhs = parse_rhs(ln, &toks, end_col)?;
                raw.push(RawBracket {
                    line: ln,
                    lhs: (i, j),
                    rhs,
                });
            }
            _ => {
                return Err(parse_err(
                    ln,
                    kcol,
                    "'name', 'dim', 'field', 'bracket' or '#'",
                ))
            }
        }
    }
    let end = input.lines().count() + 1;
    let Some((dim, _)) = dim else {
        return Err(consistency(end, "missing 'dim' declaration"));
    };
    assemble(
        name.unwrap_or_else(|| "unnamed".into()),
        dim,
        field.unwrap_or(FieldTag::Rational),
        comments,
        raw,
    )
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTerm {
    basis: usize,
    coeff: JsonScalar,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonBracket {
    lhs: [usize; 2],
    rhs: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDoc {
    #[serde(default = "unnamed")]
    name: String,
    dim: usize,
    #[serde(default = "rational_tag")]
    field: FieldTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    comments: Vec<String>,
    #[serde(default)]
    brackets: Vec<JsonBracket>,
}

fn unnamed() -> String {
    "unnamed".into()
}

fn rational_tag() -> FieldTag {
    FieldTag::Rational
}

/// Line of the `n`-th occurrence of `needle`, or 1.
fn line_of_nth(text: &str, needle: &str, n: usize) -> usize {
    text.match_indices(needle)
        .nth(n)
        .map_or(1, |(b, _)| text[..b].matches('\n').count() + 1)
}

pub fn parse_json(input: &str) -> Result<AlgebraDocument> {
    let doc: JsonDoc = serde_json::from_str(input).map_err(json_err)?;
    if doc.name.is_empty() || doc.name.chars().any(char::is_whitespace) {
        let line = line_of_nth(input, "\"name\"", 0);
        return Err(consistency(line, "name must be a single word without whitespace"));
    }
    if doc.comments.iter().any(|c| c.contains(['\n', '\r'])) {
        let line = line_of_nth(input, "\"comments\"", 0);
        return Err(consistency(line, "comments must not contain line breaks"));
    }
    let dim_line = line_of_nth(input, "\"dim\"", 0);
    if doc.dim == 0 || doc.dim > MAX_DIM {
        return Err(consistency(dim_line, format!("dim must be in 1..={MAX_DIM}")));
    }
    let mut raw = Vec::new();
    for (n, b) in doc.brackets.into_iter().enumerate() {
        let line = line_of_nth(input, "\"lhs\"", n);
        let mut rhs = Vec::new();
        for t in b.rhs {
            let g = match t.coeff {
                JsonScalar::Int(k) => Gauss {
                    re: Rational::from_integer(k.into()),
                    im: Rational::zero(),
                },
                JsonScalar::Text(s) => parse_gauss(&s)
                    .ok_or_else(|| consistency(line, format!("invalid scalar literal {s:?}")))?,
            };
            rhs.push((t.basis, g, 0));
        }
        raw.push(RawBracket {
            line,
            lhs: (b.lhs[0], b.lhs[1]),
            rhs,
        });
    }
    assemble(doc.name, doc.dim, doc.field, doc.comments, raw)
}

/// Picks the format from the first non-whitespace character.
pub fn parse_auto(input: &str) -> Result<AlgebraDocument> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_dsl(input)
    }
}

impl AlgebraDocument {
    pub fn to_dsl(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            if c.is_empty() {
                s.push_str("#\n");
            } else {
                let _ = writeln!(s, "# {c}");
            }
        }
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "dim {}", self.dim);
        let _ = writeln!(s, "field {}", self.field.as_str());
        for b in &self.brackets {
            let _ = write!(s, "bracket {} {} =", b.lhs.0, b.lhs.1);
            for (n, (k, c)) in b.rhs.iter().enumerate() {
                let text = gauss_to_string(c);
                if n == 0 {
                    let _ = write!(s, " {text}*x{k}");
                } else if !is_gaussian(c) && c.re < Rational::zero() {
                    let _ = write!(s, " - {}*x{k}", format_rational(&-c.re.clone()));
                } else {
                    let _ = write!(s, " + {text}*x{k}");
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDoc {
            name: self.name.clone(),
            dim: self.dim,
            field: self.field,
            comments: self.comments.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|b| JsonBracket {
                    lhs: [b.lhs.0, b.lhs.1],
                    rhs: b
                        .rhs
                        .iter()
                        .map(|(k, c)| JsonTerm {
                            basis: *k,
                            coeff: JsonScalar::Text(gauss_to_string(c)),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    fn context(&self) -> TowerContext {
        match self.field {
            FieldTag::Rational => TowerContext::rationals(),
            FieldTag::Gaussian => TowerContext::gaussian(),
        }
    }

    fn bracket_list(&self, ctx: &TowerContext) -> Vec<((usize, usize), Vec<FieldElement>)> {
        self.brackets
            .iter()
            .map(|b| {
                let mut v = vec![FieldElement::zero(); self.dim];
                for (k, c) in &b.rhs {
                    v[k - 1] = ctx
                        .gaussian_element(c.re.clone(), c.im.clone())
                        .expect("gaussian field tag checked");
                }
                ((b.lhs.0 - 1, b.lhs.1 - 1), v)
            })
            .collect()
    }

    /// The algebra without the Jacobi check, for reporting violations.
    pub fn to_algebra_unchecked(&self) -> Result<LieAlgebra> {
        let ctx = self.context();
        let labels = (1..=self.dim).map(|i| format!("x{i}")).collect();
        LieAlgebra::new_unchecked(self.name.clone(), labels, self.bracket_list(&ctx), ctx)
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let ctx = self.context();
        let labels = (1..=self.dim).map(|i| format!("x{i}")).collect();
        LieAlgebra::new(self.name.clone(), labels, self.bracket_list(&ctx), ctx)
    }

    /// Document for an algebra whose constants lie in ℚ(i).
    pub fn from_algebra(alg: &LieAlgebra) -> Result<Self> {
        let mut brackets = Vec::new();
        let mut gaussian = alg.ctx().imaginary_unit().is_some();
        for (&(i, j), v) in alg.brackets() {
            let mut rhs = Vec::new();
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (re, im) = c.to_gaussian().ok_or_else(|| {
                    Error::InvalidAlgebra(format!("coefficient {c} is not in Q(i)"))
                })?;
                gaussian |= !im.is_zero();
                rhs.push((k + 1, Gauss { re, im }));
            }
            brackets.push(BracketDecl {
                lhs: (i + 1, j + 1),
                rhs,
            });
        }
        let name: String = alg
            .name()
            .chars()
            .map(|c| if c.is_whitespace() || c == '#' { '_' } else { c })
            .collect();
        Ok(AlgebraDocument {
            name: if name.is_empty() { unnamed() } else { name },
            dim: alg.dim(),
            field: if gaussian {
                FieldTag::Gaussian
            } else {
                FieldTag::Rational
            },
            comments: Vec::new(),
            brackets,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    rows: Vec<Vec<JsonScalar>>,
}

/// Parses `{"rows": [[gauss, ...], ...]}` over ℚ(i).
pub fn parse_matrix(input: &str) -> Result<MatrixK> {
    let m: JsonMatrix = serde_json::from_str(input).map_err(json_err)?;
    let ctx = TowerContext::gaussian();
    let mut rows = Vec::new();
    for (r, row) in m.rows.into_iter().enumerate() {
        let mut out = Vec::new();
        for x in row {
            let g = match x {
                JsonScalar::Int(k) => Gauss {
                    re: Rational::from_integer(k.into()),
                    im: Rational::zero(),
                },
                JsonScalar::Text(s) => parse_gauss(&s).ok_or_else(|| {
                    consistency(r + 1, format!("invalid scalar literal {s:?} in row {}", r + 1))
                })?,
            };
            out.push(ctx.gaussian_element(g.re, g.im)?);
        }
        rows.push(out);
    }
    MatrixK::from_rows(rows)
}
