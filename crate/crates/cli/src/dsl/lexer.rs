use braket_core::cvs::Variance;
use braket_core::Complex64;

use super::{DslError, DslResult};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Vector { variance: Variance, name: String },
    Eta,
    EtaInv,
    IdDown,
    IdUp,
    Adj,
    Bar,
    Trace,
    Ident(String),
    Number(Complex64),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

fn parse_real(s: &str) -> Option<f64> {
    let digits = s.bytes().filter(u8::is_ascii_digit).count();
    if digits == 0 || !s.bytes().all(|c| c.is_ascii_digit() || b".eE+-".contains(&c)) {
        return None;
    }
    s.parse().ok()
}

/// `a`, `bi`, `a+bi`, `a-bi`, `a+i`; spaces are ignored, at least one digit
/// is required so that `(i)` stays a parenthesized name.
pub(crate) fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_ascii_whitespace()).collect();
    if !s.bytes().any(|c| c.is_ascii_digit()) {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(&s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => parse_real(t),
    };
    match split {
        Some(k) => Some(Complex64::new(parse_real(&body[..k])?, imag(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn tokenize(src: &str) -> DslResult<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let simple = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if let Some(kind) = simple {
            out.push(Token { kind, pos });
            pos += 1;
            continue;
        }
        if c == b'(' {
            // a call's parentheses are never a literal
            let call = matches!(
                out.last().map(|t: &Token| &t.kind),
                Some(TokenKind::Adj | TokenKind::Bar | TokenKind::Trace)
            );
            let close = bytes[pos + 1..].iter().position(|&b| b == b')' || b == b'(');
            let literal = close
                .filter(|&k| !call && bytes[pos + 1 + k] == b')')
                .and_then(|k| parse_complex(&src[pos + 1..pos + 1 + k]).map(|z| (z, k)));
            match literal {
                Some((z, k)) => {
                    out.push(Token {
                        kind: TokenKind::Number(z),
                        pos,
                    });
                    pos += k + 2;
                }
                None => {
                    out.push(Token {
                        kind: TokenKind::LParen,
                        pos,
                    });
                    pos += 1;
                }
            }
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
                pos += 1;
            }
            // exponent part, only when digits follow
            if pos < bytes.len() && matches!(bytes[pos], b'e' | b'E') {
                let mut k = pos + 1;
                if k < bytes.len() && matches!(bytes[k], b'+' | b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    pos = k;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                }
            }
            let text = &src[start..pos];
            let re = parse_real(text).ok_or_else(|| DslError::Syntax {
                pos: start,
                msg: format!("malformed number {text:?}"),
            })?;
            out.push(Token {
                kind: TokenKind::Number(Complex64::new(re, 0.0)),
                pos: start,
            });
            continue;
        }
        if is_ident_start(c) {
            while pos < bytes.len() && is_ident(bytes[pos]) {
                pos += 1;
            }
            let word = &src[start..pos];
            if pos < bytes.len() && bytes[pos] == b':' {
                let variance = match word {
                    "kd" => Variance::KetDown,
                    "ku" => Variance::KetUp,
                    "bd" => Variance::BraDown,
                    "bu" => Variance::BraUp,
                    _ => {
                        return Err(DslError::UnknownToken {
                            pos: start,
                            token: format!("{word}:"),
                        })
                    }
                };
                pos += 1;
                let name_start = pos;
                while pos < bytes.len() && is_ident(bytes[pos]) {
                    pos += 1;
                }
                if pos == name_start {
                    return Err(DslError::Syntax {
                        pos: name_start,
                        msg: format!("missing vector name after {word}:"),
                    });
                }
                out.push(Token {
                    kind: TokenKind::Vector {
                        variance,
                        name: src[name_start..pos].to_string(),
                    },
                    pos: start,
                });
                continue;
            }
            let kind = match word {
                "eta" => TokenKind::Eta,
                "etainv" => TokenKind::EtaInv,
                "idk" => TokenKind::IdDown,
                "idku" => TokenKind::IdUp,
                "adj" => TokenKind::Adj,
                "bar" => TokenKind::Bar,
                "tr" => TokenKind::Trace,
                _ => TokenKind::Ident(word.to_string()),
            };
            out.push(Token { kind, pos: start });
            continue;
        }
        // a full UTF-8 character, so the reported token is readable
        let len = src[pos..].chars().next().map_or(1, char::len_utf8);
        return Err(DslError::UnknownToken {
            pos,
            token: src[pos..pos + len].to_string(),
        });
    }
    Ok(out)
}
