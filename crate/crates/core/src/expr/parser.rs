use super::{BinOp, Bindings, Expr, ExprError, Func, Node};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(usize, Token)>, ExprError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        while let Some(tok) = lx.next_token()? {
            out.push(tok);
        }
        Ok(out)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>, ExprError> {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = if c.is_ascii_digit() || c == '.' {
            self.number(start)?
        } else if c.is_ascii_alphabetic() || c == '_' {
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                self.pos += 1;
            }
            Token::Ident(self.src[start..self.pos].to_string())
        } else {
            self.pos += c.len_utf8();
            match c {
                '+' | '-' | '*' | '/' | '^' => Token::Op(c),
                '(' => Token::LParen,
                ')' => Token::RParen,
                _ => {
                    return Err(ExprError::Syntax {
                        position: start,
                        expected: "number, identifier, operator or parenthesis".into(),
                    })
                }
            }
        };
        Ok(Some((start, tok)))
    }

    fn number(&mut self, start: usize) -> Result<Token, ExprError> {
        let bytes = self.src.as_bytes();
        let digits = |lx: &mut Lexer| {
            while lx.pos < bytes.len() && bytes[lx.pos].is_ascii_digit() {
                lx.pos += 1;
            }
        };
        digits(self);
        if self.pos < bytes.len() && bytes[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'e' || bytes[self.pos] == b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
                self.pos += 1;
            }
            let exp_start = self.pos;
            digits(self);
            if self.pos == exp_start {
                self.pos = mark;
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map(Token::Num)
            .map_err(|_| ExprError::Syntax {
                position: start,
                expected: "number".into(),
            })
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

/// Parses an expression.
///
/// Grammar, lowest precedence first:
///
/// ```text
/// expr    := term (('+' | '-') term)*
/// term    := unary (('*' | '/') unary)*
/// unary   := '-' unary | power
/// power   := primary ('^' unary)?        right-associative, constant exponent
/// primary := number | ident | ident '(' expr ')' | '(' expr ')'
/// ```
///
/// The exact token sequence `(-c)` with a numeric literal `c` yields the negative constant `-c`, which is how
/// negative constants are printed.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = Lexer::tokenize(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at < p.tokens.len() {
        return Err(p.error("operator or end of input"));
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, expected: &str) -> ExprError {
        ExprError::Syntax {
            position: self.position(),
            expected: expected.into(),
        }
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token::Op(c)) if ops.contains(c) => {
                let c = *c;
                self.at += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::wrap(Node::Binary(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::wrap(Node::Binary(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat_op(&['-']).is_some() {
            let inner = self.unary()?;
            return Ok(Expr::wrap(Node::Neg(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.eat_op(&['^']).is_none() {
            return Ok(base);
        }
        let exp_pos = self.position();
        let exponent = self.unary()?;
        let value = exponent
            .evaluate(&Bindings::new())
            .map_err(|_| ExprError::Syntax {
                position: exp_pos,
                expected: "constant exponent".into(),
            })?;
        Ok(Expr::wrap(Node::Pow(base, value)))
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some((_, tok)) = self.tokens.get(self.at).cloned() else {
            return Err(self.error("expression"));
        };
        match tok {
            Token::Num(v) => {
                self.at += 1;
                Ok(Expr::constant(v))
            }
            Token::Ident(name) => {
                self.at += 1;
                if self.peek() != Some(&Token::LParen) {
                    return Ok(Expr::var(name));
                }
                let func = Func::from_name(&name).ok_or(ExprError::UnknownFunction(name))?;
                self.at += 1;
                let arg = self.expr()?;
                self.close()?;
                Ok(Expr::call(func, arg))
            }
            Token::LParen => {
                let literal = self.tokens.get(self.at + 1..self.at + 4).map(|w| {
                    w.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>()
                });
                if let Some([Token::Op('-'), Token::Num(v), Token::RParen]) = literal.as_deref() {
                    self.at += 4;
                    return Ok(Expr::constant(-v));
                }
                self.at += 1;
                let inner = self.expr()?;
                self.close()?;
                Ok(inner)
            }
            _ => Err(self.error("expression")),
        }
    }

    fn close(&mut self) -> Result<(), ExprError> {
        if self.peek() == Some(&Token::RParen) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error("`)`"))
        }
    }
}
