use std::fmt;

use crate::diagnostic::{DiagCode, Diagnostic, SourceSpan};

macro_rules! keywords {
    ($($variant:ident => $text:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Keyword {
            $($variant),*
        }

        impl Keyword {
            pub fn from_word(word: &str) -> Option<Keyword> {
                match word {
                    $($text => Some(Keyword::$variant),)*
                    _ => None,
                }
            }

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Keyword::$variant => $text),*
                }
            }
        }
    };
}

keywords! {
    Model => "model",
    Role => "role",
    Agent => "agent",
    Goal => "goal",
    Info => "info",
    Use => "use",
    Permission => "permission",
    Provision => "provision",
    Delegate => "delegate",
    Adopt => "adopt",
    Trust => "trust",
    Monitor => "monitor",
    Vulnerability => "vulnerability",
    Threat => "threat",
    AttackMethod => "attackmethod",
    PrivacyGoal => "privacygoal",
    Policy => "policy",
    Mechanism => "mechanism",
    Requirement => "requirement",
    Describes => "describes",
    Situation => "situation",
    IsA => "is_a",
    Plays => "plays",
    AimedBy => "aimedBy",
    And => "and",
    Or => "or",
    Personal => "personal",
    Public => "public",
    Owner => "owner",
    Sensitivity => "sensitivity",
    PartOf => "partOf",
    Produce => "produce",
    Read => "read",
    Modify => "modify",
    Collect => "collect",
    Need => "need",
    Required => "required",
    Optional => "optional",
    Purpose => "purpose",
    Compatible => "compatible",
    Incompatible => "incompatible",
    Over => "over",
    HeldBy => "heldBy",
    Of => "of",
    From => "from",
    To => "to",
    Confidential => "confidential",
    NonConfidential => "nonconfidential",
    Level => "level",
    Distrust => "distrust",
    By => "by",
    On => "on",
    Intentional => "intentional",
    Incidental => "incidental",
    Threatens => "threatens",
    Exploits => "exploits",
    Actor => "actor",
    Method => "method",
    Probability => "probability",
    Impact => "impact",
    Severity => "severity",
    Mitigates => "mitigates",
    RealizedBy => "realizedBy",
    Capability => "capability",
    Anonymize => "anonymize",
    Unlink => "unlink",
    Other => "other",
    AppliedTo => "appliedTo",
    Confidentiality => "confidentiality",
    Anonymity => "anonymity",
    Unlinkability => "unlinkability",
    Unobservability => "unobservability",
    Notice => "notice",
    Transparency => "transparency",
    Accountability => "accountability",
    Concerning => "concerning",
    InterpretedBy => "interpretedBy",
    Determines => "determines",
}

impl Keyword {
    /// Keywords that open a declaration.
    pub fn starts_statement(self) -> bool {
        use Keyword::*;
        matches!(
            self,
            Model
                | Role
                | Agent
                | Goal
                | Info
                | Use
                | Permission
                | Provision
                | Delegate
                | Adopt
                | Trust
                | Monitor
                | Vulnerability
                | Threat
                | AttackMethod
                | PrivacyGoal
                | Policy
                | Mechanism
                | Requirement
                | Describes
                | Situation
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "keyword `{}`", k.as_str()),
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Str(_) => f.write_str("string"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Comma => f.write_str("`,`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

/// Splits source text into tokens. `//` comments run to end of line.
/// Strings are double-quoted with `\"`, `\\` and `\n` escapes.
pub fn tokenize(text: &str, file: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);

    while let Some(&c) = chars.peek() {
        let start = (line, col);
        let span = |len: u32| SourceSpan::new(file, start.0, start.1, len);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '/' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'/') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        chars.next();
                        col += 1;
                    }
                } else {
                    diags.push(Diagnostic::error(
                        DiagCode::IllegalCharacter,
                        Some(span(1)),
                        "illegal character `/`",
                    ));
                }
            }
            '{' | '}' | '[' | ']' | ',' => {
                chars.next();
                col += 1;
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token { kind, span: span(1) });
            }
            '"' => {
                chars.next();
                col += 1;
                let mut value = String::new();
                let mut width = 1u32;
                let mut closed = false;
                while let Some(c) = chars.next() {
                    width += 1;
                    match c {
                        '"' => {
                            closed = true;
                            col += 1;
                            break;
                        }
                        '\\' => {
                            col += 1;
                            match chars.peek().copied() {
                                Some(e @ ('"' | '\\')) => {
                                    chars.next();
                                    value.push(e);
                                    width += 1;
                                    col += 1;
                                }
                                Some('n') => {
                                    chars.next();
                                    value.push('\n');
                                    width += 1;
                                    col += 1;
                                }
                                _ => value.push('\\'),
                            }
                        }
                        '\n' => {
                            // Strings do not span lines.
                            line += 1;
                            col = 1;
                            break;
                        }
                        c => {
                            value.push(c);
                            col += 1;
                        }
                    }
                }
                if closed {
                    tokens.push(Token {
                        kind: TokenKind::Str(value),
                        span: span(width),
                    });
                } else {
                    diags.push(Diagnostic::error(
                        DiagCode::UnterminatedString,
                        Some(span(1)),
                        "unterminated string literal",
                    ));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let len = word.len() as u32;
                let kind = match Keyword::from_word(&word) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident(word),
                };
                tokens.push(Token { kind, span: span(len) });
            }
            other => {
                chars.next();
                col += 1;
                diags.push(Diagnostic::error(
                    DiagCode::IllegalCharacter,
                    Some(span(1)),
                    format!("illegal character `{}`", other.escape_default()),
                ));
            }
        }
    }

    if diags.is_empty() {
        Ok(tokens)
    } else {
        Err(diags)
    }
}
