use braket_core::opalg::Slot;
use braket_core::Complex64;

use super::lexer::{tokenize, Token, TokenKind};
use super::{DslError, DslResult};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Ket { slot: Slot, name: String },
    Bra { slot: Slot, name: String },
    OpRef(String),
    Metric,
    MetricInv,
    IdDown,
    IdUp,
    Literal(Complex64),
    Juxt(Vec<ExprAst>),
    Sum(Vec<(Sign, ExprAst)>),
    Scale(Complex64, Box<ExprAst>),
    Adj(Box<ExprAst>),
    Bar(Box<ExprAst>),
    Trace(Box<ExprAst>),
}

/// Grammar:
///
/// ```text
/// expr    := [+|-] product (('+' | '-') product)*
/// product := atom (['*'] atom)*
/// atom    := kd:NAME | ku:NAME | bd:NAME | bu:NAME | eta | etainv | idk | idku
///          | NAME | number | (adj | bar | tr) '(' expr ')' | '(' expr ')'
/// ```
///
/// Juxtaposed atoms form a chain; `*` only scales by a number literal.
pub fn parse(src: &str) -> DslResult<ExprAst> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end: src.len(),
        depth: 0,
    };
    let ast = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(DslError::Syntax {
            pos: t.pos,
            msg: "unexpected token after expression".into(),
        });
    }
    Ok(ast)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn error<T>(&self, msg: &str) -> DslResult<T> {
        Err(DslError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> DslResult<ExprAst> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error("expression nested too deeply");
        }
        let mut terms = Vec::new();
        let mut sign = match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Minus) => {
                self.at += 1;
                Sign::Minus
            }
            Some(TokenKind::Plus) => {
                self.at += 1;
                Sign::Plus
            }
            _ => Sign::Plus,
        };
        loop {
            terms.push((sign, self.product()?));
            sign = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => Sign::Plus,
                Some(TokenKind::Minus) => Sign::Minus,
                _ => break,
            };
            self.at += 1;
        }
        self.depth -= 1;
        if let [(Sign::Plus, _)] = terms.as_slice() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(ExprAst::Sum(terms))
    }

    fn starts_atom(&self) -> bool {
        !matches!(
            self.peek().map(|t| &t.kind),
            None | Some(TokenKind::Plus | TokenKind::Minus | TokenKind::Star | TokenKind::RParen)
        )
    }

    fn product(&mut self) -> DslResult<ExprAst> {
        let mut coeff: Option<Complex64> = None;
        let mut factors = Vec::new();
        let mut prev_literal = false;
        let mut first = true;
        loop {
            let star = matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star));
            let star_pos = self.pos();
            if star {
                if first {
                    return self.error("'*' needs a left operand");
                }
                self.at += 1;
            }
            if !self.starts_atom() {
                if star || first {
                    return self.error("expected an operand");
                }
                break;
            }
            let atom = self.atom()?;
            let literal = matches!(atom, ExprAst::Literal(_));
            if star && !literal && !prev_literal {
                return Err(DslError::Syntax {
                    pos: star_pos,
                    msg: "'*' scales by a number literal".into(),
                });
            }
            match atom {
                ExprAst::Literal(z) => *coeff.get_or_insert(Complex64::new(1.0, 0.0)) *= z,
                other => factors.push(other),
            }
            prev_literal = literal;
            first = false;
        }
        let body = match factors.len() {
            0 => return Ok(ExprAst::Literal(coeff.expect("a literal factor"))),
            1 => factors.pop().expect("one factor"),
            _ => ExprAst::Juxt(factors),
        };
        Ok(match coeff {
            Some(z) => ExprAst::Scale(z, Box::new(body)),
            None => body,
        })
    }

    fn group(&mut self) -> DslResult<ExprAst> {
        match self.next().map(|t| t.kind) {
            Some(TokenKind::LParen) => {}
            _ => {
                self.at -= 1;
                return self.error("expected '('");
            }
        }
        let inner = self.expr()?;
        match self.next().map(|t| t.kind) {
            Some(TokenKind::RParen) => Ok(inner),
            _ => {
                self.at -= 1;
                self.error("expected ')'")
            }
        }
    }

    fn atom(&mut self) -> DslResult<ExprAst> {
        let tok = self.next().expect("caller checked for an atom");
        Ok(match tok.kind {
            TokenKind::Vector { variance, name } => {
                let slot = super::slot_of(variance);
                if variance.is_ket() {
                    ExprAst::Ket { slot, name }
                } else {
                    ExprAst::Bra { slot, name }
                }
            }
            TokenKind::Eta => ExprAst::Metric,
            TokenKind::EtaInv => ExprAst::MetricInv,
            TokenKind::IdDown => ExprAst::IdDown,
            TokenKind::IdUp => ExprAst::IdUp,
            TokenKind::Ident(name) => ExprAst::OpRef(name),
            TokenKind::Number(z) => ExprAst::Literal(z),
            TokenKind::Adj => ExprAst::Adj(Box::new(self.group()?)),
            TokenKind::Bar => ExprAst::Bar(Box::new(self.group()?)),
            TokenKind::Trace => ExprAst::Trace(Box::new(self.group()?)),
            TokenKind::LParen => {
                self.at -= 1;
                self.group()?
            }
            TokenKind::Plus | TokenKind::Minus | TokenKind::Star | TokenKind::RParen => {
                unreachable!("not an atom start")
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(name: &str) -> ExprAst {
        ExprAst::Ket {
            slot: Slot::Down,
            name: name.into(),
        }
    }

    fn bra(name: &str) -> ExprAst {
        ExprAst::Bra {
            slot: Slot::Down,
            name: name.into(),
        }
    }

    #[test]
    fn chains_and_functions() {
        assert_eq!(parse("bd:x kd:y").unwrap(), ExprAst::Juxt(vec![bra("x"), ket("y")]));
        assert_eq!(
            parse("tr(A)").unwrap(),
            ExprAst::Trace(Box::new(ExprAst::OpRef("A".into())))
        );
        assert_eq!(parse("kd:x kd:y").unwrap(), ExprAst::Juxt(vec![ket("x"), ket("y")]));
    }

    #[test]
    fn sums_and_scales() {
        let ast = parse("-(2) * A + B (1+1i)").unwrap();
        let a = ExprAst::Scale(Complex64::new(2.0, 0.0), Box::new(ExprAst::OpRef("A".into())));
        let b = ExprAst::Scale(Complex64::new(1.0, 1.0), Box::new(ExprAst::OpRef("B".into())));
        assert_eq!(ast, ExprAst::Sum(vec![(Sign::Minus, a), (Sign::Plus, b)]));
        assert_eq!(parse("(3)").unwrap(), ExprAst::Literal(Complex64::new(3.0, 0.0)));
        assert_eq!(parse("((A))").unwrap(), ExprAst::OpRef("A".into()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for (src, pos) in [("kd:", 3), ("A +", 3), ("(A", 2), ("A * B", 2), ("adj A", 4), ("A )", 2), ("", 0)] {
            match parse(src) {
                Err(DslError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{src:?}"),
                other => panic!("{src:?} gave {other:?}"),
            }
        }
        let deep = "(".repeat(500) + "A" + &")".repeat(500);
        assert!(matches!(parse(&deep), Err(DslError::Syntax { .. })));
    }
}
