//! Constructor expressions for complexes, e.g. `cone_mult(koszul(x, y), x)`.

use thiserror::Error;

/// Parsed complex constructor. Polynomial arguments stay as text until a
/// ring is available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexExpr {
    /// Koszul complex; no arguments means all variables.
    Koszul(Vec<String>),
    Taylor(Vec<String>),
    /// Minimal free resolution of a named module.
    Resolution(String),
    Dual(Box<ComplexExpr>),
    Shift(Box<ComplexExpr>, i32),
    Sum(Vec<ComplexExpr>),
    /// Cone of multiplication by a homogeneous element.
    ConeMult(Box<ComplexExpr>, String),
    Minimize(Box<ComplexExpr>),
    Zero,
    /// Another named complex of the same scenario.
    Ref(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {message}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

fn err(position: usize, message: impl Into<String>) -> ExprError {
    ExprError { position, message: message.into() }
}

/// Splits `text` at top-level commas, returning `(offset, piece)` pairs.
fn split_args(text: &str, base: usize) -> Result<Vec<(usize, &str)>, ExprError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(base + i, "unbalanced `)`"));
                }
            }
            ',' if depth == 0 => {
                out.push((base + start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(base + text.len(), "unbalanced `(`"));
    }
    if !text.trim().is_empty() || !out.is_empty() {
        out.push((base + start, &text[start..]));
    }
    Ok(out)
}

fn trimmed(offset: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (offset + lead, s.trim())
}

pub fn parse_complex_expr(text: &str) -> Result<ComplexExpr, ExprError> {
    parse_at(text, 0)
}

fn parse_at(text: &str, base: usize) -> Result<ComplexExpr, ExprError> {
    let (base, text) = trimmed(base, text);
    if text.is_empty() {
        return Err(err(base, "empty expression"));
    }
    let name_end = text.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(text.len());
    let name = &text[..name_end];
    if name.is_empty() {
        return Err(err(base, format!("expected a constructor name, found `{text}`")));
    }
    let rest = text[name_end..].trim_start();
    if rest.is_empty() {
        return Ok(ComplexExpr::Ref(name.to_string()));
    }
    let open = base + text.len() - rest.len();
    if !rest.starts_with('(') || !rest.ends_with(')') {
        return Err(err(open, "expected `(...)` after the constructor name"));
    }
    let inner = &rest[1..rest.len() - 1];
    let args = split_args(inner, open + 1)?;
    let arity = |n: usize| -> Result<(), ExprError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(err(base, format!("`{name}` takes {n} argument(s), got {}", args.len())))
        }
    };
    let texts = || args.iter().map(|(_, a)| a.trim().to_string()).collect::<Vec<_>>();
    let sub = |k: usize| parse_at(args[k].1, args[k].0).map(Box::new);
    Ok(match name {
        "koszul" => ComplexExpr::Koszul(texts()),
        "taylor" => {
            if args.is_empty() {
                return Err(err(base, "`taylor` needs at least one monomial"));
            }
            ComplexExpr::Taylor(texts())
        }
        "res" | "resolution" => {
            arity(1)?;
            ComplexExpr::Resolution(args[0].1.trim().to_string())
        }
        "dual" => {
            arity(1)?;
            ComplexExpr::Dual(sub(0)?)
        }
        "minimize" => {
            arity(1)?;
            ComplexExpr::Minimize(sub(0)?)
        }
        "shift" => {
            arity(2)?;
            let (pos, k) = trimmed(args[1].0, args[1].1);
            let k = k.parse::<i32>().map_err(|_| err(pos, format!("`{k}` is not an integer")))?;
            ComplexExpr::Shift(sub(0)?, k)
        }
        "sum" => {
            if args.len() < 2 {
                return Err(err(base, "`sum` needs at least two complexes"));
            }
            ComplexExpr::Sum(args.iter().map(|(p, a)| parse_at(a, *p)).collect::<Result<_, _>>()?)
        }
        "cone_mult" => {
            arity(2)?;
            ComplexExpr::ConeMult(sub(0)?, args[1].1.trim().to_string())
        }
        "zero" => {
            arity(0)?;
            ComplexExpr::Zero
        }
        other => return Err(err(base, format!("unknown constructor `{other}`"))),
    })
}

impl std::fmt::Display for ComplexExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexExpr::Koszul(a) => write!(f, "koszul({})", a.join(", ")),
            ComplexExpr::Taylor(a) => write!(f, "taylor({})", a.join(", ")),
            ComplexExpr::Resolution(l) => write!(f, "res({l})"),
            ComplexExpr::Dual(x) => write!(f, "dual({x})"),
            ComplexExpr::Shift(x, k) => write!(f, "shift({x}, {k})"),
            ComplexExpr::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "sum({})", parts.join(", "))
            }
            ComplexExpr::ConeMult(x, p) => write!(f, "cone_mult({x}, {p})"),
            ComplexExpr::Minimize(x) => write!(f, "minimize({x})"),
            ComplexExpr::Zero => write!(f, "zero()"),
            ComplexExpr::Ref(n) => write!(f, "{n}"),
        }
    }
}
