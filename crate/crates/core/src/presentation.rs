//! Variety presentations: a signature plus multilinear relations.
//!
//! Presentation files are UTF-8 text:
//!
//! ```text
//! # comment
//! name: novikov            (optional)
//! ops: *
//! (a*b)*c = (a*c)*b
//! ((a*b)*c) - (a*(b*c)) - ((b*a)*c) + (b*(a*c)) = 0
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::term::{glyph_name, parse_relation, Monomial, Operation, Polynomial, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    signature: Signature,
    relations: Vec<Polynomial>,
}

/// Builtin names accepted by [`Presentation::builtin`].
pub const BUILTINS: &[&str] = &["novikov", "bicommutative", "dernov", "dernov_dual", "nov_s", "bicom_s"];

const NOVIKOV: &[&str] = &[
    "(a*b)*c = (a*c)*b",
    "((a*b)*c) - (a*(b*c)) = ((b*a)*c) - (b*(a*c))",
];

const BICOMMUTATIVE: &[&str] = &["(a*b)*c = (a*c)*b", "a*(b*c) = b*(a*c)"];

const DERNOV: &[&str] = &[
    "(a<b)<c = (a<c)<b",
    "a>(b>c) + (b>c)<a = b>(a>c) + (a>c)<b",
    "(a>b)>c - (a>c)<b = (a>c)>b - (a>b)<c",
    "(a<b)>c - a<(c<b) + (a<c)<b + c>(a<b) = (c<b)>a - c<(a<b) + (c<a)<b + a>(c<b)",
];

const DERNOV_DUAL: &[&str] = &[
    "a<(b<c) + (b<c)>a = 0",
    "a<(b>c) = 0",
    "(a<b)<c - (c<b)>a = (a<c)<b - (b<c)>a",
    "(a>b)<c + c>(a>b) - (a>c)>b = 0",
    "a>(b<c) + (b<c)>a = 0",
    "a>(b>c) = b>(a>c)",
    "(a<b)>c = (c<b)>a",
    "(a>b)>c = (a>c)>b",
];

/// The pure-`≺` part of the dual: left-commutative, right-symmetric, plus
/// the degree-4 identities.
const NOV_S: &[&str] = &[
    "a<(b<c) = b<(a<c)",
    "(a<b)<c - a<(b<c) = (a<c)<b - a<(c<b)",
    "(a<(b<c))<d = a<(b<(c<d)) = 0",
    "a<((b<c)<d) = a<((b<d)<c)",
    "((a<b)<c)<d = ((a<c)<b)<d",
];

const BICOM_S: &[&str] = &[
    "(a>b)>c = (a>c)>b",
    "a>(b>c) = b>(a>c)",
    "((a>b)>c)>d = d>(c>(b>a)) = c>(b>(a>d))",
    "((a>b)>c)>d = c>((d>a)>b) = b>((d>a)>c) = b>((c>a)>d)",
];

impl Presentation {
    /// Validates every relation; see [`Presentation::validate_relation`].
    pub fn new(name: impl Into<String>, signature: Signature, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            Self::validate_relation(r, &signature)?;
        }
        Ok(Presentation { name: name.into(), signature, relations })
    }

    /// A relation must be nonzero, homogeneous, multilinear and use only
    /// operations of the signature.
    pub fn validate_relation(r: &Polynomial, sig: &Signature) -> Result<()> {
        if r.is_zero() {
            return Err(Error::InvalidRelation("relation is zero".into()));
        }
        let Some(d) = r.homogeneous_degree() else {
            return Err(Error::InvalidRelation(format!("inhomogeneous relation {}", r.display(sig))));
        };
        if d < 2 {
            return Err(Error::InvalidRelation(format!("relation of degree {d} has no product")));
        }
        if !r.is_multilinear() {
            return Err(Error::InvalidRelation(format!(
                "relation {} is not multilinear in x1..x{d}",
                r.display(sig)
            )));
        }
        if r.op_mask() >> sig.len() != 0 {
            return Err(Error::InvalidRelation("operation outside the signature".into()));
        }
        Ok(())
    }

    /// No relations.
    pub fn free(signature: Signature) -> Self {
        Presentation { name: "free".into(), signature, relations: Vec::new() }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let (sig, lines) = match name {
            "novikov" => (Signature::single(), NOVIKOV),
            "bicommutative" => (Signature::single(), BICOMMUTATIVE),
            "dernov" => (Signature::prec_succ(), DERNOV),
            "dernov_dual" => (Signature::prec_succ(), DERNOV_DUAL),
            "nov_s" => (Signature::from_glyphs(&['<']), NOV_S),
            "bicom_s" => (Signature::from_glyphs(&['>']), BICOM_S),
            other => return Err(Error::UnknownBuiltin(other.to_string())),
        };
        let mut relations = Vec::new();
        for line in lines {
            relations.extend(parse_relation(line, &sig).expect("builtin relation parses"));
        }
        Self::new(name, sig, relations)
    }

    /// Parses the presentation file format. Errors carry 1-based line
    /// numbers.
    pub fn from_text(text: &str, default_name: &str) -> Result<Self> {
        let mut name = String::from(default_name);
        let mut sig: Option<Signature> = None;
        let mut relations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Presentation { line: line_no, message };
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("ops:") {
                if sig.is_some() {
                    return Err(err("duplicate ops header".into()));
                }
                let mut ops: Vec<Operation> = Vec::new();
                for tok in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                    let mut chars = tok.chars();
                    let (Some(g), None) = (chars.next(), chars.next()) else {
                        return Err(err(format!("operation glyph must be one character, got `{tok}`")));
                    };
                    if g.is_alphanumeric() || "()+-=/#:,".contains(g) {
                        return Err(err(format!("reserved or invalid glyph `{g}`")));
                    }
                    if ops.iter().any(|o| o.glyph == g) {
                        return Err(err(format!("duplicate glyph `{g}`")));
                    }
                    ops.push(Operation { name: glyph_name(g), glyph: g });
                }
                if ops.is_empty() {
                    return Err(err("ops header lists no operations".into()));
                }
                sig = Some(Signature::new(ops));
                continue;
            }
            let Some(s) = sig.as_ref() else {
                return Err(err("relation before the `ops:` header".into()));
            };
            let parsed = parse_relation(line, s).map_err(|e| err(e.to_string()))?;
            for r in parsed {
                Self::validate_relation(&r, s).map_err(|e| err(e.to_string()))?;
                relations.push(r);
            }
        }
        let signature = sig.ok_or(Error::Presentation { line: 0, message: "missing `ops:` header".into() })?;
        Ok(Presentation { name, signature, relations })
    }

    /// Renders in the file format; `from_text` reads it back unchanged.
    pub fn to_text(&self) -> String {
        let mut out = format!("name: {}\nops:", self.name);
        for op in self.signature.ops() {
            out.push(' ');
            out.push(op.glyph);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str(&r.to_text(&self.signature));
            out.push_str(" = 0\n");
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Appends relations (validated).
    pub fn extend(mut self, relations: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        for r in relations {
            Self::validate_relation(&r, &self.signature)?;
            self.relations.push(r);
        }
        Ok(self)
    }

    pub fn max_degree(&self) -> usize {
        self.relations.iter().filter_map(Polynomial::homogeneous_degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.relations.iter().filter_map(Polynomial::homogeneous_degree).min().unwrap_or(0)
    }

    /// All relations have degree 3.
    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.homogeneous_degree() == Some(3))
    }

    /// Rewrites operations: operation `i` becomes `map[i].0` of `target`,
    /// with arguments swapped when `map[i].1` is set.
    pub fn map_operations(&self, map: &[(usize, bool)], target: &Signature) -> Result<Presentation> {
        if map.len() != self.signature.len() {
            return Err(Error::SignatureMismatch { left: self.signature.len(), right: map.len() });
        }
        if map.iter().any(|&(t, _)| t >= target.len()) {
            return Err(Error::SignatureMismatch { left: map.len(), right: target.len() });
        }
        let relations = self.relations.iter().map(|r| r.map_monomials(|m: &Monomial| m.map_ops(map))).collect();
        Presentation::new(self.name.clone(), target.clone(), relations)
    }
}
