use std::collections::HashMap;
use std::fmt;

use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("zero exponent at line {line}, column {column}")]
    ZeroExponent { line: usize, column: usize },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
}

/// Generators plus relator words. Relators are kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Panics if generator names repeat or a relator mentions an undeclared generator.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        for (i, g) in generators.iter().enumerate() {
            assert!(
                !generators[..i].contains(g),
                "generator `{g}` declared twice"
            );
        }
        let relators = relators
            .into_iter()
            .map(|r| {
                assert!(r.uses_only(generators.len()), "relator uses undeclared generator");
                r.free_reduce()
            })
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut p = Parser::new(text);
        let index: HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        p.skip_ws();
        let w = p.word(&index)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(w.free_reduce())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; relators: ", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display_with(&self.generators))?;
        }
        Ok(())
    }
}

/// Parses `gens: a,b; relators: a^4, b^2, (a*b)^3`.
///
/// Words are products of terms separated by `*`; a term is an atom with an
/// optional signed integer exponent, and an atom is a generator, a
/// parenthesized word, or a commutator `[u,v]` (expanded to `u^-1 v^-1 u v`).
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.keyword("gens")?;
    p.expect(':')?;

    let mut generators: Vec<String> = Vec::new();
    loop {
        p.skip_ws();
        let name = p.ident()?;
        if generators.contains(&name) {
            return Err(ParseError::DuplicateGenerator(name));
        }
        generators.push(name);
        p.skip_ws();
        if p.peek() == Some(',') {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(';')?;
    p.skip_ws();
    p.keyword("relators")?;
    p.expect(':')?;

    let index: HashMap<&str, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_str(), i))
        .collect();
    let mut relators = Vec::new();
    p.skip_ws();
    if !p.at_end() {
        loop {
            p.skip_ws();
            relators.push(p.word(&index)?.free_reduce());
            p.skip_ws();
            match p.peek() {
                Some(',') => {
                    p.bump();
                }
                None => break,
                Some(_) => return Err(p.error("expected `,` or end of input")),
            }
        }
    }
    Ok(Presentation {
        generators,
        relators,
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, message: &str) -> ParseError {
        let (line, column) = self.line_col(self.pos);
        ParseError::Syntax {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let start = self.pos;
        let id = self.ident().map_err(|_| self.error(&format!("expected `{kw}`")))?;
        if id != kw {
            self.pos = start;
            return Err(self.error(&format!("expected `{kw}`")));
        }
        Ok(())
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.error("expected identifier")),
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let mut neg = false;
        if let Some(c @ ('-' | '+')) = self.peek() {
            neg = c == '-';
            self.pos += 1;
            self.skip_ws();
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn word(&mut self, index: &HashMap<&str, usize>) -> Result<Word, ParseError> {
        let mut w = self.term(index)?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                w = w.mul(&self.term(index)?);
            } else {
                return Ok(w);
            }
        }
    }

    fn term(&mut self, index: &HashMap<&str, usize>) -> Result<Word, ParseError> {
        let atom = self.atom(index)?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let exp_pos = self.pos;
            let k = self.integer()?;
            if k == 0 {
                let (line, column) = self.line_col(exp_pos);
                return Err(ParseError::ZeroExponent { line, column });
            }
            Ok(atom.pow(k))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self, index: &HashMap<&str, usize>) -> Result<Word, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                self.skip_ws();
                let w = self.word(index)?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                self.skip_ws();
                let u = self.word(index)?;
                self.expect(',')?;
                self.skip_ws();
                let v = self.word(index)?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident()?;
                match index.get(name.as_str()) {
                    Some(&g) => Ok(Word::from_letters(vec![Letter::new(g, false)])),
                    None => {
                        let (line, column) = self.line_col(start);
                        Err(ParseError::UndeclaredGenerator { name, line, column })
                    }
                }
            }
            _ => Err(self.error("expected generator, `(` or `[`")),
        }
    }
}
