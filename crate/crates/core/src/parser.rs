//! Text >> [`Formula`] parsing.
//!
//! ASCII grammar: `T F ~ & | -> <-> [] <> |> ( )` plus variables `pN`.
//! The Unicode spellings of the same operators are accepted on input.
//! Binding strength, strongest first: `{~, [], <>}` then `{&, |}` then `|>`
//! then `{->, <->}`. Implications associate to the right, `&`/`|` to the
//! left; `|>` does not associate, so chains need explicit parentheses.

use std::fmt;

use crate::formula::Formula;

/// A syntax error with the character position (0-based) it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl fmt::Display) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Top,
    Bot,
    Var(u32),
    Not,
    And,
    Or,
    Imp,
    Iff,
    BoxOp,
    DiaOp,
    RhdOp,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Token::Top => "T",
            Token::Bot => "F",
            Token::Var(_) => "variable",
            Token::Not => "~",
            Token::And => "&",
            Token::Or => "|",
            Token::Imp => "->",
            Token::Iff => "<->",
            Token::BoxOp => "[]",
            Token::DiaOp => "<>",
            Token::RhdOp => "|>",
            Token::LParen => "(",
            Token::RParen => ")",
        };
        f.write_str(text)
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let at = i;
        let c = chars[i];
        i += 1;
        let token = match c {
            c if c.is_whitespace() => continue,
            'T' | '⊤' => Token::Top,
            'F' | '⊥' => Token::Bot,
            '~' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '∨' => Token::Or,
            '→' => Token::Imp,
            '↔' => Token::Iff,
            '□' => Token::BoxOp,
            '◇' => Token::DiaOp,
            '▷' => Token::RhdOp,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '|' => match chars.get(i) {
                Some('>') => {
                    i += 1;
                    Token::RhdOp
                }
                _ => Token::Or,
            },
            '-' => match chars.get(i) {
                Some('>') => {
                    i += 1;
                    Token::Imp
                }
                _ => return err(at, "expected '>' after '-'"),
            },
            '[' => match chars.get(i) {
                Some(']') => {
                    i += 1;
                    Token::BoxOp
                }
                _ => return err(at, "expected ']' after '['"),
            },
            '<' => match chars.get(i) {
                Some('>') => {
                    i += 1;
                    Token::DiaOp
                }
                Some('-') if chars.get(i + 1) == Some(&'>') => {
                    i += 2;
                    Token::Iff
                }
                _ => return err(at, "expected '>' or '->' after '<'"),
            },
            'p' => {
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return err(at, "expected digits after 'p' (variables are p0, p1, ...)");
                }
                let digits: String = chars[digits_start..i].iter().collect();
                match digits.parse::<u32>() {
                    Ok(index) => Token::Var(index),
                    Err(_) => return err(at, "variable index out of range"),
                }
            }
            other => return err(at, format_args!("unexpected character '{other}'")),
        };
        // Reject run-on words such as `Tp0` or `Fx`.
        if matches!(token, Token::Top | Token::Bot | Token::Var(_)) {
            if let Some(next) = chars.get(i) {
                if next.is_alphanumeric() {
                    return err(i, format_args!("unexpected character '{next}'"));
                }
            }
        }
        tokens.push((at, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// implication level: `rhd (('->' | '<->') implication)?`, right-associative
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.rhd()?;
        match self.peek() {
            Some((_, Token::Imp)) => {
                self.next();
                Ok(left.imp(self.implication()?))
            }
            Some((_, Token::Iff)) => {
                self.next();
                Ok(left.iff(self.implication()?))
            }
            _ => Ok(left),
        }
    }

    /// rhd level: `andor ('|>' andor)?`, non-associative
    fn rhd(&mut self) -> Result<Formula, ParseError> {
        let left = self.andor()?;
        if let Some((_, Token::RhdOp)) = self.peek() {
            self.next();
            let right = self.andor()?;
            if let Some((at, Token::RhdOp)) = self.peek() {
                return err(*at, "|> does not associate; parenthesize the chain");
            }
            return Ok(left.rhd(right));
        }
        Ok(left)
    }

    /// conjunction/disjunction level: `unary (('&' | '|') unary)*`, left-associative
    fn andor(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some((_, Token::And)) => {
                    self.next();
                    acc = acc.and(self.unary()?);
                }
                Some((_, Token::Or)) => {
                    self.next();
                    acc = acc.or(self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some((_, Token::Not)) => {
                self.next();
                Ok(self.unary()?.not())
            }
            Some((_, Token::BoxOp)) => {
                self.next();
                Ok(self.unary()?.boxed())
            }
            Some((_, Token::DiaOp)) => {
                self.next();
                Ok(self.unary()?.dia())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some((_, Token::Top)) => Ok(Formula::Top),
            Some((_, Token::Bot)) => Ok(Formula::Bot),
            Some((_, Token::Var(i))) => Ok(Formula::Var(i)),
            Some((_, Token::LParen)) => {
                let inner = self.implication()?;
                match self.next() {
                    Some((_, Token::RParen)) => Ok(inner),
                    Some((at, other)) => err(at, format_args!("expected ')', found '{other}'")),
                    None => err(self.end, "expected ')', found end of input"),
                }
            }
            Some((at, other)) => err(at, format_args!("expected a formula, found '{other}'")),
            None => err(self.end, "expected a formula, found end of input"),
        }
    }
}

/// Parses a formula from ASCII (or Unicode-aliased) text.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
    };
    let formula = parser.implication()?;
    match parser.next() {
        None => Ok(formula),
        Some((at, token)) => err(at, format_args!("unexpected '{token}' after the formula")),
    }
}
