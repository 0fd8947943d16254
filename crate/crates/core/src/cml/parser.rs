//! Recursive-descent parser with statement-level error recovery.
//!
//! After an error the parser skips ahead to the next declaration keyword
//! that starts a line, so one malformed statement costs exactly one
//! diagnostic.

use super::ast::*;
use super::lexer::{Keyword, Token, TokenKind};
use crate::diagnostic::{DiagCode, Diagnostic, SourceSpan};
use crate::model::{
    Capability, Level, NeedToUse, ProvisionType, PurposeOfUse, RequirementKind, SensitivityLevel,
    Subject, ThreatKind, TrustLevel, UseType,
};

type PResult<T> = Result<T, Diagnostic>;

/// Parses a token stream. Always returns the statements that could be
/// recovered, together with one diagnostic per malformed statement.
pub fn parse(tokens: &[Token]) -> (Ast, Vec<Diagnostic>) {
    let mut p = Parser { tokens, pos: 0 };
    let mut ast = Ast::default();
    let mut diags = Vec::new();

    if p.peek_keyword(Keyword::Model) {
        p.pos += 1;
        ast.name = p.opt_string();
    }

    while p.pos < tokens.len() {
        let start = p.pos;
        match p.statement() {
            Ok(stmt) => ast.statements.push(stmt),
            Err(diag) => {
                diags.push(diag);
                p.synchronize(start);
            }
        }
    }
    (ast, diags)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_keyword(&self, kw: Keyword) -> bool {
        matches!(self.peek(), Some(Token { kind: TokenKind::Keyword(k), .. }) if *k == kw)
    }

    fn peek_kind(&self, kind: &TokenKind) -> bool {
        self.peek().is_some_and(|t| &t.kind == kind)
    }

    /// Span to blame when the expected token is missing: the offending
    /// token, or the last token at end of input.
    fn here(&self) -> SourceSpan {
        self.peek()
            .or_else(|| self.tokens.last())
            .map(|t| t.span.clone())
            .unwrap_or_else(|| SourceSpan::new("", 1, 1, 1))
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.kind.to_string(),
            None => "end of input".to_string(),
        }
    }

    /// True when the current token begins a new declaration on its own line.
    fn at_statement_start(&self) -> bool {
        let Some(tok) = self.peek() else { return false };
        let TokenKind::Keyword(k) = tok.kind else { return false };
        if !k.starts_statement() {
            return false;
        }
        self.pos == 0 || self.tokens[self.pos - 1].span.line < tok.span.line
    }

    /// Skips to the next line-leading declaration, never re-reading the
    /// token the failed statement started at.
    fn synchronize(&mut self, start: usize) {
        if self.pos == start {
            self.pos += 1;
        }
        while self.pos < self.tokens.len() && !self.at_statement_start() {
            self.pos += 1;
        }
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.peek_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: Keyword) -> PResult<SourceSpan> {
        if self.peek_keyword(kw) {
            let span = self.tokens[self.pos].span.clone();
            self.pos += 1;
            Ok(span)
        } else {
            Err(Diagnostic::error(
                DiagCode::MissingClause,
                Some(self.here()),
                format!("expected `{}`, found {}", kw.as_str(), self.found()),
            ))
        }
    }

    fn expect_punct(&mut self, kind: TokenKind) -> PResult<()> {
        if self.peek_kind(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&kind.to_string()))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        Diagnostic::error(
            DiagCode::UnexpectedToken,
            Some(self.here()),
            format!("expected {what}, found {}", self.found()),
        )
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek() {
            Some(Token { kind: TokenKind::Ident(name), span }) => {
                self.pos += 1;
                Ok(Ident::new(name.clone(), span.clone()))
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<Ident>> {
        let mut ids = vec![self.ident()?];
        while self.peek_kind(&TokenKind::Comma) {
            self.pos += 1;
            ids.push(self.ident()?);
        }
        Ok(ids)
    }

    fn opt_string(&mut self) -> Option<String> {
        match self.peek() {
            Some(Token { kind: TokenKind::Str(s), .. }) => {
                self.pos += 1;
                Some(s.clone())
            }
            _ => None,
        }
    }

    /// Picks one of several keywords, mapping it to a value.
    fn choice<T: Copy>(&mut self, what: &str, options: &[(Keyword, T)]) -> PResult<T> {
        if let Some(Token { kind: TokenKind::Keyword(k), .. }) = self.peek() {
            if let Some((_, v)) = options.iter().find(|(kw, _)| kw == k) {
                self.pos += 1;
                return Ok(*v);
            }
        }
        Err(self.unexpected(what))
    }

    /// A level letter, which lexes as an identifier.
    fn code<T>(&mut self, what: &str, parse: impl Fn(&str) -> Option<T>) -> PResult<T> {
        if let Some(Token { kind: TokenKind::Ident(s), .. }) = self.peek() {
            if let Some(v) = parse(s) {
                self.pos += 1;
                return Ok(v);
            }
        }
        Err(self.unexpected(what))
    }

    fn sensitivity(&mut self) -> PResult<SensitivityLevel> {
        self.code("sensitivity level R, C, S or T", SensitivityLevel::from_code)
    }

    fn level(&mut self) -> PResult<Level> {
        self.code("level L, M or H", Level::from_code)
    }

    fn use_type(&mut self) -> PResult<UseType> {
        self.choice(
            "use type (produce, read, modify or collect)",
            &[
                (Keyword::Produce, UseType::Produce),
                (Keyword::Read, UseType::Read),
                (Keyword::Modify, UseType::Modify),
                (Keyword::Collect, UseType::Collect),
            ],
        )
    }

    fn subject(&mut self) -> PResult<Subject> {
        self.choice(
            "`goal` or `permission`",
            &[(Keyword::Goal, Subject::Goal), (Keyword::Permission, Subject::Permission)],
        )
    }

    fn statement(&mut self) -> PResult<Statement> {
        let tok = self.peek().expect("statement called at end of input");
        let span = tok.span.clone();
        let TokenKind::Keyword(kw) = tok.kind else {
            let msg = match &tok.kind {
                TokenKind::Ident(w) => format!("unknown declaration `{w}`"),
                other => format!("expected a declaration, found {other}"),
            };
            let code = if matches!(tok.kind, TokenKind::Ident(_)) {
                DiagCode::UnknownKeyword
            } else {
                DiagCode::UnexpectedToken
            };
            return Err(Diagnostic::error(code, Some(span), msg));
        };
        if !kw.starts_statement() || kw == Keyword::Model {
            let msg = if kw == Keyword::Model {
                "the `model` header must come first".to_string()
            } else {
                format!("expected a declaration, found keyword `{}`", kw.as_str())
            };
            return Err(Diagnostic::error(DiagCode::UnexpectedToken, Some(span), msg));
        }
        self.pos += 1;
        let kind = match kw {
            Keyword::Role => {
                let id = self.ident()?;
                let label = self.opt_string();
                let is_a = if self.eat_keyword(Keyword::IsA) { Some(self.ident()?) } else { None };
                StmtKind::Role { id, label, is_a }
            }
            Keyword::Agent => {
                let id = self.ident()?;
                let label = self.opt_string();
                let plays = if self.eat_keyword(Keyword::Plays) { self.ident_list()? } else { Vec::new() };
                StmtKind::Agent { id, label, plays }
            }
            Keyword::Goal => self.goal()?,
            Keyword::Info => self.info()?,
            Keyword::Use => self.use_stmt()?,
            Keyword::Permission => {
                let id = self.ident()?;
                let permission_type = self.use_type()?;
                self.expect_keyword(Keyword::Over)?;
                let over = self.ident()?;
                self.expect_keyword(Keyword::HeldBy)?;
                let held_by = self.ident()?;
                StmtKind::Permission { id, permission_type, over, held_by }
            }
            Keyword::Provision => {
                let id = self.ident()?;
                self.expect_keyword(Keyword::Of)?;
                let of = self.ident()?;
                self.expect_keyword(Keyword::From)?;
                let from = self.ident()?;
                self.expect_keyword(Keyword::To)?;
                let to = self.ident()?;
                let provision_type = self.choice(
                    "`confidential` or `nonconfidential`",
                    &[
                        (Keyword::Confidential, ProvisionType::Confidential),
                        (Keyword::NonConfidential, ProvisionType::NonConfidential),
                    ],
                )?;
                StmtKind::Provision { id, of, from, to, provision_type }
            }
            Keyword::Delegate => {
                let kind = self.subject()?;
                let id = self.ident()?;
                self.expect_keyword(Keyword::From)?;
                let from = self.ident()?;
                self.expect_keyword(Keyword::To)?;
                let to = self.ident()?;
                self.expect_keyword(Keyword::Of)?;
                let of = self.ident()?;
                StmtKind::Delegate { kind, id, from, to, of }
            }
            Keyword::Adopt => {
                let actor = self.ident()?;
                let delegation = self.ident()?;
                StmtKind::Adopt { actor, delegation }
            }
            Keyword::Trust => {
                let id = self.ident()?;
                self.expect_keyword(Keyword::From)?;
                let from = self.ident()?;
                self.expect_keyword(Keyword::To)?;
                let to = self.ident()?;
                self.expect_keyword(Keyword::On)?;
                let kind = self.subject()?;
                let on = self.ident()?;
                self.expect_keyword(Keyword::Level)?;
                let level = self.choice(
                    "`trust` or `distrust`",
                    &[(Keyword::Trust, TrustLevel::Trust), (Keyword::Distrust, TrustLevel::Distrust)],
                )?;
                StmtKind::Trust { id, from, to, kind, on, level }
            }
            Keyword::Monitor => {
                let id = self.ident()?;
                self.expect_keyword(Keyword::By)?;
                let by = self.ident()?;
                self.expect_keyword(Keyword::Of)?;
                let of = self.ident()?;
                self.expect_keyword(Keyword::On)?;
                let kind = self.subject()?;
                let on = self.ident()?;
                StmtKind::Monitor { id, by, of, kind, on }
            }
            Keyword::Vulnerability => {
                let id = self.ident()?;
                let label = self.opt_string();
                self.expect_keyword(Keyword::On)?;
                let on = self.ident_list()?;
                StmtKind::Vulnerability { id, label, on }
            }
            Keyword::Threat => self.threat()?,
            Keyword::AttackMethod => {
                let id = self.ident()?;
                let label = self.opt_string();
                StmtKind::AttackMethod { id, label }
            }
            Keyword::PrivacyGoal => {
                let id = self.ident()?;
                let label = self.opt_string();
                let mitigates =
                    if self.eat_keyword(Keyword::Mitigates) { self.ident_list()? } else { Vec::new() };
                let realized_by =
                    if self.eat_keyword(Keyword::RealizedBy) { self.ident_list()? } else { Vec::new() };
                StmtKind::PrivacyGoal { id, label, mitigates, realized_by }
            }
            Keyword::Policy => {
                let id = self.ident()?;
                let label = self.opt_string();
                StmtKind::Policy { id, label }
            }
            Keyword::Mechanism => {
                let id = self.ident()?;
                let label = self.opt_string();
                self.expect_keyword(Keyword::Capability)?;
                let capability = self.choice(
                    "`anonymize`, `unlink` or `other`",
                    &[
                        (Keyword::Anonymize, Capability::Anonymize),
                        (Keyword::Unlink, Capability::Unlink),
                        (Keyword::Other, Capability::Other),
                    ],
                )?;
                let applied_to =
                    if self.eat_keyword(Keyword::AppliedTo) { self.ident_list()? } else { Vec::new() };
                StmtKind::Mechanism { id, label, capability, applied_to }
            }
            Keyword::Requirement => {
                let kind = self.choice(
                    "requirement kind",
                    &[
                        (Keyword::Confidentiality, RequirementKind::Confidentiality),
                        (Keyword::Anonymity, RequirementKind::Anonymity),
                        (Keyword::Unlinkability, RequirementKind::Unlinkability),
                        (Keyword::Unobservability, RequirementKind::Unobservability),
                        (Keyword::Notice, RequirementKind::Notice),
                        (Keyword::Transparency, RequirementKind::Transparency),
                        (Keyword::Accountability, RequirementKind::Accountability),
                    ],
                )?;
                let id = self.ident()?;
                self.expect_keyword(Keyword::Concerning)?;
                let concerning = self.ident()?;
                let interpreted_by = if self.eat_keyword(Keyword::InterpretedBy) {
                    self.ident_list()?
                } else {
                    Vec::new()
                };
                StmtKind::Requirement { kind, id, concerning, interpreted_by }
            }
            Keyword::Describes => {
                let info = self.ident()?;
                let goal = self.ident()?;
                StmtKind::Describes { info, goal }
            }
            Keyword::Situation => {
                let id = self.ident()?;
                self.expect_keyword(Keyword::Determines)?;
                let info = self.ident()?;
                let level = self.sensitivity()?;
                StmtKind::Situation { id, info, level }
            }
            _ => unreachable!("starts_statement covers every declaration keyword"),
        };
        Ok(Statement { kind, span })
    }

    fn goal(&mut self) -> PResult<StmtKind> {
        let id = self.ident()?;
        let label = self.opt_string();
        let aimed_by = if self.eat_keyword(Keyword::AimedBy) { Some(self.ident()?) } else { None };
        let decomposition = if self.peek_kind(&TokenKind::LBrace) {
            self.pos += 1;
            let op = self.choice(
                "`and` or `or`",
                &[(Keyword::And, Decomposition::And), (Keyword::Or, Decomposition::Or)],
            )?;
            self.expect_punct(TokenKind::LBracket)?;
            let subs = self.ident_list()?;
            self.expect_punct(TokenKind::RBracket)?;
            self.expect_punct(TokenKind::RBrace)?;
            Some((op, subs))
        } else {
            None
        };
        Ok(StmtKind::Goal { id, label, aimed_by, decomposition })
    }

    fn info(&mut self) -> PResult<StmtKind> {
        let id = self.ident()?;
        let label = self.opt_string();
        let class = if self.eat_keyword(Keyword::Personal) {
            self.expect_punct(TokenKind::LBrace)?;
            self.expect_keyword(Keyword::Owner)?;
            let owner = self.ident()?;
            self.expect_keyword(Keyword::Sensitivity)?;
            let sensitivity = self.sensitivity()?;
            self.expect_punct(TokenKind::RBrace)?;
            InfoClass::Personal { owner, sensitivity }
        } else if self.eat_keyword(Keyword::Public) {
            InfoClass::Public
        } else {
            return Err(Diagnostic::error(
                DiagCode::MissingClause,
                Some(self.here()),
                format!("expected `personal` or `public`, found {}", self.found()),
            ));
        };
        let part_of = if self.eat_keyword(Keyword::PartOf) { Some(self.ident()?) } else { None };
        Ok(StmtKind::Info { id, label, class, part_of })
    }

    fn use_stmt(&mut self) -> PResult<StmtKind> {
        let goal = self.ident()?;
        let type_of_use = self.use_type()?;
        let info = self.ident()?;
        let (mut need, mut purpose) = (None, None);
        if self.peek_kind(&TokenKind::LBrace) {
            self.pos += 1;
            if self.eat_keyword(Keyword::Need) {
                need = Some(self.choice(
                    "`required` or `optional`",
                    &[(Keyword::Required, NeedToUse::Require), (Keyword::Optional, NeedToUse::Optional)],
                )?);
            }
            if self.eat_keyword(Keyword::Purpose) {
                purpose = Some(self.choice(
                    "`compatible` or `incompatible`",
                    &[
                        (Keyword::Compatible, PurposeOfUse::Compatible),
                        (Keyword::Incompatible, PurposeOfUse::Incompatible),
                    ],
                )?);
            }
            self.expect_punct(TokenKind::RBrace)?;
        }
        Ok(StmtKind::Use { goal, type_of_use, info, need, purpose })
    }

    /// Threat bodies accept their clauses in any order; `actor` and
    /// `method` may repeat so over-specified threats reach the
    /// cardinality check instead of failing to parse.
    fn threat(&mut self) -> PResult<StmtKind> {
        let kind = self.choice(
            "`intentional` or `incidental`",
            &[
                (Keyword::Intentional, ThreatKind::Intentional),
                (Keyword::Incidental, ThreatKind::Incidental),
            ],
        )?;
        let id = self.ident()?;
        let label = self.opt_string();
        self.expect_punct(TokenKind::LBrace)?;
        let (mut threatens, mut exploits, mut actors, mut methods, mut impacts) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut probability = None;
        loop {
            if self.peek_kind(&TokenKind::RBrace) {
                self.pos += 1;
                break;
            }
            if self.eat_keyword(Keyword::Threatens) {
                threatens.extend(self.ident_list()?);
            } else if self.eat_keyword(Keyword::Exploits) {
                exploits.extend(self.ident_list()?);
            } else if self.eat_keyword(Keyword::Actor) {
                actors.push(self.ident()?);
            } else if self.eat_keyword(Keyword::Method) {
                methods.push(self.ident()?);
            } else if self.peek_keyword(Keyword::Probability) {
                if probability.is_some() {
                    return Err(self.unexpected("at most one `probability` clause"));
                }
                self.pos += 1;
                probability = Some(self.level()?);
            } else if self.eat_keyword(Keyword::Impact) {
                self.expect_keyword(Keyword::Severity)?;
                let severity = self.level()?;
                self.expect_keyword(Keyword::Over)?;
                let over = self.ident()?;
                impacts.push(ImpactClause { severity, over });
            } else if self.peek().is_none() || self.at_statement_start() {
                return Err(self.unexpected("`}`"));
            } else {
                return Err(self.unexpected("a threat clause or `}`"));
            }
        }
        Ok(StmtKind::Threat { kind, id, label, threatens, exploits, actors, methods, probability, impacts })
    }
}
