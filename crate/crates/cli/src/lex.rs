//! Character cursor over one line of input, with 1-based columns.

use crate::error::{CliError, Location, Result};

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    source: &'a str,
    line: usize,
    /// Column of the first character of `text`.
    first_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str, source: &'a str, line: usize, first_column: usize) -> Self {
        Cursor { text, pos: 0, source, line, first_column }
    }

    pub fn location(&self) -> Location {
        self.location_at(self.pos)
    }

    fn location_at(&self, pos: usize) -> Location {
        let column = self.first_column + self.text[..pos].chars().count();
        Location { source: self.source.to_string(), line: self.line, column }
    }

    pub fn error(&self, message: impl Into<String>) -> CliError {
        CliError::parse(self.location(), message)
    }

    pub fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    /// Consumes `token` after optional whitespace.
    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.rest().trim_end())))
        }
    }

    /// An identifier, with the location of its first character.
    pub fn ident(&mut self) -> Option<(String, Location)> {
        self.skip_ws();
        let at = self.location();
        let len: usize = self.rest().chars().take_while(|&c| is_ident_char(c)).map(char::len_utf8).sum();
        if len == 0 {
            return None;
        }
        let word = self.rest()[..len].to_string();
        self.pos += len;
        Some((word, at))
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, Location)> {
        self.ident().ok_or_else(|| self.error(format!("expected {what}")))
    }

    /// An optionally signed decimal integer.
    pub fn integer(&mut self) -> Result<(i64, Location)> {
        self.skip_ws();
        let at = self.location();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| CliError::parse(at.clone(), "expected an integer"))
            .map(|n| (n, at))
    }
}
