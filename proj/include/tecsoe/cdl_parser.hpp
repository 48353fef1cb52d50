#ifndef TECSOE_CDL_PARSER_HPP
#define TECSOE_CDL_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tecsoe/cdl_ast.hpp"
#include "tecsoe/cdl_lexer.hpp"
#include "tecsoe/diag.hpp"

namespace tecsoe {

namespace detail {

class CdlParser {
public:
    explicit CdlParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    CdlAst parse_file() {
        CdlAst ast;
        while (!at_end()) {
            const Token& t = peek();
            if (t.is_keyword("signature")) {
                ast.decl_order.emplace_back(CdlAst::DeclKind::Signature, ast.signatures.size());
                ast.signatures.push_back(parse_signature());
            } else if (t.is_keyword("celltype")) {
                ast.decl_order.emplace_back(CdlAst::DeclKind::Celltype, ast.celltypes.size());
                ast.celltypes.push_back(parse_celltype());
            } else if (t.is_keyword("cell")) {
                ast.decl_order.emplace_back(CdlAst::DeclKind::Cell, ast.cells.size());
                ast.cells.push_back(parse_cell());
            } else {
                fail({"'signature'", "'celltype'", "'cell'"});
            }
        }
        return ast;
    }

private:
    SignatureDecl parse_signature() {
        SignatureDecl sig;
        sig.span = peek().span;
        expect_keyword("signature");
        sig.name = expect_ident();
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) sig.functions.push_back(parse_function());
        expect(TokenKind::RBrace);
        sig.span.end = expect(TokenKind::Semi).span.end;
        return sig;
    }

    FunctionDecl parse_function() {
        FunctionDecl fn;
        fn.span = peek().span;
        if (peek().is_keyword("void")) {
            next();
            fn.return_type = std::nullopt;
        } else {
            fn.return_type = expect_type();
        }
        fn.name = expect_ident();
        expect(TokenKind::LParen);
        if (peek().is_keyword("void")) {
            next();
        } else if (!check(TokenKind::RParen)) {
            fn.params.push_back(parse_param());
            while (check(TokenKind::Comma)) {
                next();
                fn.params.push_back(parse_param());
            }
        }
        expect(TokenKind::RParen);
        fn.span.end = expect(TokenKind::Semi).span.end;
        return fn;
    }

    ParamDecl parse_param() {
        ParamDecl p;
        p.span = peek().span;
        // Direction is an optional leading word; "in int32 x" vs "int32 x" is
        // disambiguated by the fixed scalar-type vocabulary.
        if (check(TokenKind::Ident)) {
            const std::string& word = peek().lexeme;
            if (word == "in" || word == "out" || word == "inout") {
                p.direction = word == "in" ? ParamDirection::In
                            : word == "out" ? ParamDirection::Out
                                            : ParamDirection::InOut;
                next();
            }
        }
        p.type = expect_type();
        p.name = expect_ident();
        p.span.end = tokens_[pos_ - 1].span.end;
        return p;
    }

    CelltypeDecl parse_celltype() {
        CelltypeDecl ct;
        ct.span = peek().span;
        expect_keyword("celltype");
        ct.name = expect_ident();
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) {
            const Token& t = peek();
            if (t.is_keyword("entry") || t.is_keyword("call")) {
                bool is_entry = t.is_keyword("entry");
                PortDecl port;
                port.span = t.span;
                next();
                port.signature = expect_ident();
                port.name = expect_ident();
                port.span.end = expect(TokenKind::Semi).span.end;
                (is_entry ? ct.entries : ct.calls).push_back(std::move(port));
            } else if (t.is_keyword("attr")) {
                parse_attr_block(ct);
            } else if (t.is_keyword("var")) {
                parse_var_block(ct);
            } else {
                fail({"'entry'", "'call'", "'attr'", "'var'", "'}'"});
            }
        }
        expect(TokenKind::RBrace);
        ct.span.end = expect(TokenKind::Semi).span.end;
        return ct;
    }

    void parse_attr_block(CelltypeDecl& ct) {
        expect_keyword("attr");
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) {
            AttrDecl attr;
            attr.span = peek().span;
            attr.type = expect_type();
            attr.name = expect_ident();
            if (check(TokenKind::Eq)) {
                next();
                attr.default_value = parse_literal();
            }
            attr.span.end = expect(TokenKind::Semi).span.end;
            ct.attrs.push_back(std::move(attr));
        }
        expect(TokenKind::RBrace);
        expect(TokenKind::Semi);
    }

    void parse_var_block(CelltypeDecl& ct) {
        expect_keyword("var");
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) {
            VarDecl var;
            var.span = peek().span;
            var.type = expect_type();
            var.name = expect_ident();
            expect(TokenKind::Eq);
            var.default_value = parse_literal();
            var.span.end = expect(TokenKind::Semi).span.end;
            ct.vars.push_back(std::move(var));
        }
        expect(TokenKind::RBrace);
        expect(TokenKind::Semi);
    }

    CellDecl parse_cell() {
        CellDecl cell;
        cell.span = peek().span;
        expect_keyword("cell");
        cell.celltype = expect_ident();
        cell.name = expect_ident();
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) {
            SourceSpan start = peek().span;
            std::string lhs = expect_ident();
            expect(TokenKind::Eq);
            if (check(TokenKind::Ident)) {
                // IDENT '.' IDENT is a port binding; a bare literal is an
                // attribute init.
                BindingDecl b;
                b.span = start;
                b.call_port = lhs;
                b.target_cell = expect_ident();
                expect(TokenKind::Dot);
                b.target_entry = expect_ident();
                b.span.end = expect(TokenKind::Semi).span.end;
                cell.bindings.push_back(std::move(b));
            } else {
                AttrInit init;
                init.span = start;
                init.attr = lhs;
                init.value = parse_literal();
                init.span.end = expect(TokenKind::Semi).span.end;
                cell.attr_inits.push_back(std::move(init));
            }
        }
        expect(TokenKind::RBrace);
        cell.span.end = expect(TokenKind::Semi).span.end;
        return cell;
    }

    Literal parse_literal() {
        const Token& t = peek();
        Literal lit;
        lit.span = t.span;
        lit.lexeme = t.lexeme;
        switch (t.kind) {
            case TokenKind::IntLit:
                lit.kind = LiteralKind::Int;
                lit.int_value = std::stoll(t.lexeme);
                lit.float_value = static_cast<double>(lit.int_value);
                break;
            case TokenKind::FloatLit:
                lit.kind = LiteralKind::Float;
                lit.float_value = std::stod(t.lexeme);
                break;
            case TokenKind::BoolLit:
                lit.kind = LiteralKind::Bool;
                lit.bool_value = t.lexeme == "true";
                break;
            default:
                fail({"integer", "float", "'true'", "'false'"});
        }
        next();
        return lit;
    }

    ScalarType expect_type() {
        if (check(TokenKind::Ident)) {
            if (auto t = scalar_type_from_name(peek().lexeme)) {
                next();
                return *t;
            }
        }
        fail({"scalar type"});
    }

    std::string expect_ident() {
        if (!check(TokenKind::Ident)) fail({"identifier"});
        return next().lexeme;
    }

    const Token& expect(TokenKind kind) {
        if (!check(kind)) fail({to_string(kind)});
        return next();
    }

    void expect_keyword(std::string_view kw) {
        if (!peek().is_keyword(kw)) fail({"'" + std::string(kw) + "'"});
        next();
    }

    bool check(TokenKind kind) const { return peek().kind == kind; }
    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token& peek() const {
        static const Token eof{};
        return at_end() ? eof : tokens_[pos_];
    }

    const Token& next() {
        const Token& t = peek();
        if (!at_end()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        SourceSpan span = t.span;
        if (at_end() && !tokens_.empty()) {
            span = tokens_.back().span;
            span.begin = span.end;
        }
        std::string found = at_end() ? "end of file" : "'" + t.lexeme + "'";
        throw ParseError(span, std::move(expected), found);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline CdlAst parse_cdl(std::string_view text) {
    return detail::CdlParser(tokenize(text)).parse_file();
}

} // namespace tecsoe

#endif // TECSOE_CDL_PARSER_HPP
