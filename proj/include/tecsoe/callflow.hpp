#ifndef TECSOE_CALLFLOW_HPP
#define TECSOE_CALLFLOW_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tecsoe/cdl_lexer.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/diag.hpp"

namespace tecsoe {

enum class FlowErrorKind {
    UnknownCellOrEntry,
    IllegalNesting,
    DuplicateTask,
    BadPriority,
};

class FlowError : public CompileError {
public:
    FlowError(FlowErrorKind kind, SourceSpan span, const std::string& msg)
        : CompileError(span, msg), kind_(kind) {}

    FlowErrorKind kind() const { return kind_; }

private:
    FlowErrorKind kind_;
};

// One entry-port invocation; children are the invocations made while the
// parent's entry function (and hence its guard) is active.
struct FlowNode {
    std::string cell;
    std::string entry;
    std::string function;
    std::vector<FlowNode> children;
    SourceSpan span;
};

struct TaskDef {
    std::string name;
    int priority = 1;  // smaller number = higher priority
    std::vector<FlowNode> roots;
    SourceSpan span;
};

struct CallFlowSet {
    std::vector<TaskDef> tasks;
};

struct AccessMatrix {
    std::map<std::string, std::set<std::string>> access;          // cell -> tasks
    std::map<std::pair<std::string, std::string>, int> counts;    // (cell, task) -> n

    const std::set<std::string>& tasks_of(const std::string& cell) const {
        static const std::set<std::string> empty;
        auto it = access.find(cell);
        return it == access.end() ? empty : it->second;
    }

    int count(const std::string& cell, const std::string& task) const {
        auto it = counts.find({cell, task});
        return it == counts.end() ? 0 : it->second;
    }

    int total_invocations() const {
        int total = 0;
        for (const auto& [_, n] : counts) total += n;
        return total;
    }
};

namespace detail {

class FlowParser {
public:
    FlowParser(std::vector<Token> tokens, const ComponentModel& model)
        : tokens_(std::move(tokens)), model_(model) {}

    CallFlowSet parse_file() {
        CallFlowSet flows;
        std::set<std::string> names;
        while (!at_end()) {
            TaskDef task = parse_task();
            if (!names.insert(task.name).second)
                throw FlowError(FlowErrorKind::DuplicateTask, task.span,
                                "duplicate task '" + task.name + "'");
            flows.tasks.push_back(std::move(task));
        }
        if (flows.tasks.empty())
            throw ParseError(SourceSpan{}, {"'task'"}, "end of file");
        return flows;
    }

private:
    TaskDef parse_task() {
        TaskDef task;
        task.span = peek().span;
        expect_word("task");
        task.name = expect_ident();
        expect_word("priority");
        const Token& prio = expect(TokenKind::IntLit);
        task.priority = std::stoi(prio.lexeme);
        if (task.priority < 1)
            throw FlowError(FlowErrorKind::BadPriority, prio.span,
                            "task priority must be >= 1");
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) task.roots.push_back(parse_invocation(nullptr));
        expect(TokenKind::RBrace);
        return task;
    }

    FlowNode parse_invocation(const FlowNode* parent) {
        FlowNode node;
        node.span = peek().span;
        node.cell = expect_ident();
        expect(TokenKind::Dot);
        node.entry = expect_ident();
        expect(TokenKind::Dot);
        node.function = expect_ident();
        resolve(node, parent);
        if (check(TokenKind::LBrace)) {
            next();
            while (!check(TokenKind::RBrace)) node.children.push_back(parse_invocation(&node));
            expect(TokenKind::RBrace);
        }
        if (check(TokenKind::Semi)) next();
        return node;
    }

    void resolve(const FlowNode& node, const FlowNode* parent) {
        const PortDecl* entry = model_.find_entry(node.cell, node.entry);
        if (!entry)
            throw FlowError(FlowErrorKind::UnknownCellOrEntry, node.span,
                            "no entry port '" + node.cell + "." + node.entry + "'");
        const SignatureDecl& sig = model_.signatures.at(entry->signature);
        bool fn_found = false;
        for (const auto& fn : sig.functions)
            if (fn.name == node.function) fn_found = true;
        if (!fn_found)
            throw FlowError(FlowErrorKind::UnknownCellOrEntry, node.span,
                            "signature '" + sig.name + "' has no function '" + node.function +
                                "'");
        // A nested invocation must follow a join out of the parent cell; roots
        // model the task body's direct calls and may target any cell.
        if (parent && !model_.joined(parent->cell, node.cell, node.entry))
            throw FlowError(FlowErrorKind::IllegalNesting, node.span,
                            "no join connects '" + parent->cell + "' to '" + node.cell + "." +
                                node.entry + "'");
    }

    std::string expect_ident() {
        if (!check(TokenKind::Ident)) fail({"identifier"});
        return next().lexeme;
    }

    void expect_word(std::string_view word) {
        if (!check(TokenKind::Ident) || peek().lexeme != word)
            fail({"'" + std::string(word) + "'"});
        next();
    }

    const Token& expect(TokenKind kind) {
        if (!check(kind)) fail({to_string(kind)});
        return next();
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
        SourceSpan span = at_end() && !tokens_.empty() ? tokens_.back().span : peek().span;
        std::string found = at_end() ? "end of file" : "'" + peek().lexeme + "'";
        throw ParseError(span, std::move(expected), found);
    }

    std::vector<Token> tokens_;
    const ComponentModel& model_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline CallFlowSet parse_callflow(std::string_view text, const ComponentModel& model) {
    return detail::FlowParser(tokenize(text), model).parse_file();
}

inline AccessMatrix compute_access_matrix(const ComponentModel& model, const CallFlowSet& flows) {
    (void)model;  // flows are already resolved against it
    AccessMatrix matrix;
    auto walk = [&](auto&& self, const FlowNode& node, const std::string& task) -> void {
        matrix.access[node.cell].insert(task);
        matrix.counts[{node.cell, task}] += 1;
        for (const auto& child : node.children) self(self, child, task);
    };
    for (const auto& task : flows.tasks)
        for (const auto& root : task.roots) walk(walk, root, task.name);
    return matrix;
}

} // namespace tecsoe

#endif // TECSOE_CALLFLOW_HPP
