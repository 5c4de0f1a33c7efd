#include "reosched/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "reosched/errors.hpp"

namespace reosched {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void append_term(std::string& out, double coef, const std::string& name, bool first) {
    if (coef < 0) {
        out += first ? "-" : "- ";
    } else if (!first) {
        out += "+ ";
    }
    const double mag = std::fabs(coef);
    if (mag != 1.0) {
        out += format_double(mag);
        out += ' ';
    }
    out += name;
    out += ' ';
}

} // namespace

std::string export_lp(const MilpModel& model, const std::string& name) {
    std::string out;
    out.reserve(1024 + static_cast<std::size_t>(model.value.size()) * 24);
    out += "\\ Problem: " + name + "\n";
    out += "Maximize\n obj: ";
    bool first = true;
    for (int c = 0; c < model.num_cols(); ++c) {
        if (model.objective[c] == 0.0) continue;
        append_term(out, model.objective[c], model.col_name(c), first);
        first = false;
    }
    if (first) out += "0 ";
    out += "\nSubject To\n";
    std::vector<std::pair<int, double>> terms;
    for (int r = 0; r < model.num_rows(); ++r) {
        terms.clear();
        for (int e = model.row_start[r]; e < model.row_start[r + 1]; ++e) {
            terms.emplace_back(model.col_index[e], model.value[e]);
        }
        std::sort(terms.begin(), terms.end());
        out += ' ' + model.row_name(r) + ": ";
        bool f = true;
        for (const auto& [col, coef] : terms) {
            append_term(out, coef, model.col_name(col), f);
            f = false;
        }
        if (f) out += "0 ";
        switch (model.sense[r]) {
            case RowSense::LE: out += "<= "; break;
            case RowSense::GE: out += ">= "; break;
            case RowSense::EQ: out += "= "; break;
        }
        out += format_double(model.rhs[r]);
        out += '\n';
    }
    out += "Bounds\n";
    for (int c = 0; c < model.num_cols(); ++c) {
        const std::string cname = model.col_name(c);
        if (model.lower[c] == model.upper[c]) {
            out += ' ' + cname + " = " + format_double(model.lower[c]) + '\n';
        } else {
            out += ' ' + format_double(model.lower[c]) + " <= " + cname + " <= " +
                   format_double(model.upper[c]) + '\n';
        }
    }
    bool any_bin = false;
    for (int c = 0; c < model.num_cols(); ++c) any_bin = any_bin || model.binary[c];
    if (any_bin) {
        out += "Binaries\n";
        for (int c = 0; c < model.num_cols(); ++c) {
            if (model.binary[c]) out += ' ' + model.col_name(c) + '\n';
        }
    }
    out += "End\n";
    return out;
}

namespace {

struct Token {
    enum Kind { Word, Number, Op, Colon } kind;
    std::string text;
    double number = 0.0;
    int line = 0;
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' ||
           c == '(' || c == ')' || c == '[' || c == ']';
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '\\') { // comment to end of line
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == ':') {
            out.push_back({Token::Colon, ":", 0.0, line});
            ++i;
            continue;
        }
        if (c == '+' || c == '-') {
            out.push_back({Token::Op, std::string(1, c), 0.0, line});
            ++i;
            continue;
        }
        if (c == '<' || c == '>' || c == '=') {
            std::string op(1, c);
            if (i + 1 < text.size() && text[i + 1] == '=') {
                op += '=';
                ++i;
            }
            out.push_back({Token::Op, op, 0.0, line});
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                    text[j] == 'e' || text[j] == 'E' ||
                    ((text[j] == '+' || text[j] == '-') && (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
                ++j;
            }
            Token t{Token::Number, text.substr(i, j - i), 0.0, line};
            const auto res = std::from_chars(text.data() + i, text.data() + j, t.number);
            if (res.ec != std::errc()) {
                throw IngestionError("bad number at line " + std::to_string(line));
            }
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        if (is_name_char(c)) {
            std::size_t j = i;
            while (j < text.size() && is_name_char(text[j])) ++j;
            out.push_back({Token::Word, text.substr(i, j - i), 0.0, line});
            i = j;
            continue;
        }
        throw IngestionError("unexpected character '" + std::string(1, c) + "' at line " +
                             std::to_string(line));
    }
    return out;
}

bool word_is(const Token& t, const char* w) {
    if (t.kind != Token::Word) return false;
    if (t.text.size() != std::string_view(w).size()) return false;
    for (std::size_t i = 0; i < t.text.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(t.text[i])) != w[i]) return false;
    }
    return true;
}

bool is_section_word(const Token& t) {
    return word_is(t, "subject") || word_is(t, "st") || word_is(t, "bounds") ||
           word_is(t, "binaries") || word_is(t, "binary") || word_is(t, "end") ||
           word_is(t, "maximize") || word_is(t, "minimize") || word_is(t, "general");
}

} // namespace

MilpModel parse_lp(const std::string& text) {
    const std::vector<Token> toks = tokenize(text);
    MilpModel model;
    std::map<std::string, int> col_of;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::string> names; // column names in creation order
    const auto intern = [&](const std::string& name) {
        auto it = col_of.find(name);
        if (it != col_of.end()) return it->second;
        const int col = model.add_col({}, 0.0, inf, false, 0.0);
        col_of.emplace(name, col);
        names.push_back(name);
        return col;
    };

    enum Section { None, Objective, Rows, Bounds, Binaries, Done };
    Section section = None;
    std::size_t i = 0;
    const auto err = [&](const std::string& what, int line) -> IngestionError {
        return IngestionError(what + " at line " + std::to_string(line));
    };

    // Linear expression: [name :] terms (op rhs)?; returns after consuming
    // the full expression including any sense/rhs.
    const auto parse_row = [&](bool objective) {
        // Optional label.
        if (i + 1 < toks.size() && toks[i].kind == Token::Word && toks[i + 1].kind == Token::Colon) {
            i += 2;
        }
        std::vector<std::pair<int, double>> terms;
        double sign = 1.0;
        bool have_sign = false;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.kind == Token::Op && (t.text == "+" || t.text == "-")) {
                sign = have_sign ? sign * (t.text == "-" ? -1.0 : 1.0)
                                 : (t.text == "-" ? -1.0 : 1.0);
                have_sign = true;
                ++i;
                continue;
            }
            if (t.kind == Token::Number) {
                double coef = sign * t.number;
                ++i;
                if (i < toks.size() && toks[i].kind == Token::Word && !is_section_word(toks[i])) {
                    // Could be the start of the next row's label; a label is
                    // always followed by ':'.
                    if (i + 1 < toks.size() && toks[i + 1].kind == Token::Colon) {
                        throw err("number dangling before a row label", t.line);
                    }
                    terms.emplace_back(intern(toks[i].text), coef);
                    ++i;
                } else if (!objective) {
                    // A bare number is only legal as an empty expression's 0.
                    if (coef != 0.0) throw err("constant term in a row", t.line);
                }
                sign = 1.0;
                have_sign = false;
                continue;
            }
            if (t.kind == Token::Word) {
                if (is_section_word(t)) break; // section keywords end the expression
                if (i + 1 < toks.size() && toks[i + 1].kind == Token::Colon) break; // next label
                terms.emplace_back(intern(t.text), sign);
                sign = 1.0;
                have_sign = false;
                ++i;
                continue;
            }
            if (t.kind == Token::Op && (t.text == "<=" || t.text == ">=" || t.text == "=")) {
                if (objective) throw err("relational operator in the objective", t.line);
                const std::string op = t.text;
                ++i;
                double rhs_sign = 1.0;
                while (i < toks.size() && toks[i].kind == Token::Op &&
                       (toks[i].text == "+" || toks[i].text == "-")) {
                    if (toks[i].text == "-") rhs_sign = -rhs_sign;
                    ++i;
                }
                if (i >= toks.size() || toks[i].kind != Token::Number) {
                    throw err("missing right-hand side", t.line);
                }
                const double rhs = rhs_sign * toks[i].number;
                ++i;
                const RowSense sense = op == "<=" ? RowSense::LE
                                                  : (op == ">=" ? RowSense::GE : RowSense::EQ);
                model.add_row({}, sense, rhs, terms);
                return;
            }
            throw err("unexpected token '" + t.text + "'", t.line);
        }
        if (objective) {
            for (const auto& [col, coef] : terms) model.objective[col] += coef;
        } else if (!terms.empty()) {
            throw err("constraint without a relational operator", toks[i - 1].line);
        }
    };

    while (i < toks.size()) {
        const Token& t = toks[i];
        if (word_is(t, "maximize") || word_is(t, "max")) {
            section = Objective;
            ++i;
            parse_row(true);
            continue;
        }
        if (word_is(t, "minimize") || word_is(t, "min")) {
            throw err("only maximization models are supported", t.line);
        }
        if (word_is(t, "subject")) {
            if (i + 1 >= toks.size() || !word_is(toks[i + 1], "to")) throw err("expected 'Subject To'", t.line);
            section = Rows;
            i += 2;
            continue;
        }
        if (word_is(t, "st")) {
            section = Rows;
            ++i;
            continue;
        }
        if (word_is(t, "bounds")) {
            section = Bounds;
            ++i;
            continue;
        }
        if (word_is(t, "binaries") || word_is(t, "binary")) {
            section = Binaries;
            ++i;
            continue;
        }
        if (word_is(t, "end")) {
            section = Done;
            break;
        }
        switch (section) {
            case Rows:
                parse_row(false);
                break;
            case Bounds: {
                // Forms: "l <= name <= u", "name <= u", "name = v", "name >= l".
                double first_num = 0.0;
                bool has_first = false;
                double sign = 1.0;
                while (i < toks.size() && toks[i].kind == Token::Op &&
                       (toks[i].text == "+" || toks[i].text == "-")) {
                    if (toks[i].text == "-") sign = -sign;
                    ++i;
                }
                if (toks[i].kind == Token::Number) {
                    first_num = sign * toks[i].number;
                    has_first = true;
                    ++i;
                    if (i >= toks.size() || toks[i].kind != Token::Op || toks[i].text != "<=") {
                        throw err("expected '<=' in bound", toks[i - 1].line);
                    }
                    ++i;
                }
                if (i >= toks.size() || toks[i].kind != Token::Word) {
                    throw err("expected a variable name in bound", t.line);
                }
                const int col = intern(toks[i].text);
                ++i;
                if (has_first) model.lower[col] = first_num;
                if (i < toks.size() && toks[i].kind == Token::Op &&
                    (toks[i].text == "<=" || toks[i].text == "=" || toks[i].text == ">=")) {
                    const std::string op = toks[i].text;
                    ++i;
                    double s2 = 1.0;
                    while (i < toks.size() && toks[i].kind == Token::Op &&
                           (toks[i].text == "+" || toks[i].text == "-")) {
                        if (toks[i].text == "-") s2 = -s2;
                        ++i;
                    }
                    if (i >= toks.size() || toks[i].kind != Token::Number) {
                        throw err("expected a bound value", t.line);
                    }
                    const double v = s2 * toks[i].number;
                    ++i;
                    if (op == "<=") {
                        model.upper[col] = v;
                    } else if (op == ">=") {
                        model.lower[col] = v;
                    } else {
                        model.lower[col] = model.upper[col] = v;
                    }
                } else if (!has_first) {
                    throw err("incomplete bound", t.line);
                }
                break;
            }
            case Binaries: {
                if (t.kind != Token::Word) throw err("expected a variable name", t.line);
                const int col = intern(t.text);
                model.binary[col] = 1;
                if (model.upper[col] == inf) model.upper[col] = 1.0;
                ++i;
                break;
            }
            default:
                throw err("unexpected token '" + t.text + "' outside any section", t.line);
        }
    }
    if (section != Done) throw IngestionError("missing 'End'");

    // Re-derive printable names through the meta so exports round-trip: the
    // parser cannot rebuild decision coordinates, so it keeps a name table.
    model.meta.satellites = 0;
    model.parsed_names = std::move(names);
    return model;
}

void write_lp_file(const std::string& path, const MilpModel& model, const std::string& name) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "' for writing");
    f << export_lp(model, name);
}

MilpModel read_lp_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_lp(ss.str());
}

std::string format_solution(const MilpModel& model, const std::vector<double>& values,
                            const std::string& status) {
    std::string out = "status " + status + "\n";
    for (int c = 0; c < model.num_cols(); ++c) {
        out += model.col_name(c) + ' ' + format_double(values[c]) + '\n';
    }
    return out;
}

} // namespace reosched
