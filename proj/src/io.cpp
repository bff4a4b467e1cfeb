#include "qcsp/io.hpp"

#include "qcsp/catalog.hpp"
#include "qcsp/errors.hpp"

#include <charconv>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qcsp {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> logical_lines(std::string_view text)
{
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        std::string line(text.substr(pos, end - pos));
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first])))
            ++first;
        line.erase(0, first);
        if (!line.empty())
            out.push_back({number, std::move(line)});
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

std::pair<std::string, std::string> head_rest(const std::string& line)
{
    auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos)
        return {line, {}};
    auto rest = line.substr(sp + 1);
    auto first = rest.find_first_not_of(" \t");
    return {line.substr(0, sp), first == std::string::npos ? std::string() : rest.substr(first)};
}

// Splits "a,(b,c),[d,e]" at commas outside brackets.
std::vector<std::string> split_top_level(const std::string& s, int line)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[')
            ++depth;
        else if (ch == ')' || ch == ']')
            --depth;
        if (depth < 0)
            throw ParseError("unbalanced brackets in tuple", line);
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (depth != 0)
        throw ParseError("unbalanced brackets in tuple", line);
    out.push_back(cur);
    return out;
}

// Tuple tokens of a relation body line: parenthesised groups or bare words.
std::vector<std::vector<std::string>> tuple_tokens(const std::string& text, int line, bool& bare)
{
    std::vector<std::vector<std::string>> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] == '(') {
            int depth = 0;
            std::size_t j = i;
            for (; j < text.size(); ++j) {
                if (text[j] == '(')
                    ++depth;
                else if (text[j] == ')' && --depth == 0)
                    break;
            }
            if (j == text.size())
                throw ParseError("unterminated tuple", line);
            out.push_back(split_top_level(text.substr(i + 1, j - i - 1), line));
            bare = false;
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({text.substr(i, j - i)});
            bare = true;
            i = j;
        }
    }
    return out;
}

int parse_int(const std::string& s, int line, const char* what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(std::string("expected an integer for ") + what + ", got '" + s + "'", line);
    return value;
}

struct Document {
    Structure structure;
    std::optional<std::vector<int>> distinguished;
    std::optional<Certificate> certificate;
};

Document parse_document(std::string_view text, bool allow_gadget)
{
    Document doc;
    std::string name;
    std::optional<std::vector<std::string>> domain;
    std::map<std::string, int> index;
    Signature sig;
    std::vector<std::vector<std::pair<Tuple, int>>> tuples;
    std::optional<std::vector<std::string>> distinguished;
    int distinguished_line = 0;
    std::optional<std::size_t> current;
    std::optional<Certificate> cert;
    bool in_cert = false;

    auto label_index = [&](const std::string& label, int line) {
        auto it = index.find(label);
        if (it == index.end())
            throw ParseError("unknown element '" + label + "'", line);
        return it->second;
    };

    for (const auto& [ln, text] : logical_lines(text)) {
        auto [head, rest] = head_rest(text);
        if (in_cert) {
            if (head == "tags") {
                for (auto& t : split_ws(rest))
                    cert->tags.push_back(t);
            } else if (head == "witness") {
                cert->witness = rest;
            } else if (head == "end") {
                in_cert = false;
            } else {
                throw ParseError("unexpected '" + head + "' inside certificate stanza", ln);
            }
            continue;
        }
        if (head == "structure") {
            if (!name.empty() || domain)
                throw ParseError("duplicate structure header", ln);
            name = rest;
            current.reset();
        } else if (head == "domain") {
            if (domain)
                throw ParseError("duplicate domain line", ln);
            domain = split_ws(rest);
            for (std::size_t i = 0; i < domain->size(); ++i)
                if (!index.emplace((*domain)[i], static_cast<int>(i)).second)
                    throw ParseError("repeated element '" + (*domain)[i] + "'", ln);
            current.reset();
        } else if (head == "relation") {
            if (!domain)
                throw ParseError("relation before domain", ln);
            auto parts = split_ws(rest);
            if (parts.size() != 2)
                throw ParseError("expected 'relation <symbol> <arity>'", ln);
            int arity = parse_int(parts[1], ln, "arity");
            if (arity < 1)
                throw ParseError("arity must be positive", ln);
            if (sig.find(parts[0]))
                throw ParseError("relation '" + parts[0] + "' declared twice", ln);
            current = sig.add(parts[0], arity);
            tuples.emplace_back();
        } else if (head == "distinguished") {
            if (!allow_gadget)
                throw ParseError("'distinguished' is only valid in gadget files", ln);
            if (distinguished)
                throw ParseError("duplicate distinguished line", ln);
            distinguished = split_ws(rest);
            distinguished_line = ln;
            current.reset();
        } else if (head == "certificate") {
            if (!allow_gadget)
                throw ParseError("'certificate' is only valid in gadget files", ln);
            if (cert)
                throw ParseError("duplicate certificate stanza", ln);
            auto parts = split_ws(rest);
            if (parts.size() != 2)
                throw ParseError("expected 'certificate <condition> <kind>'", ln);
            auto kind = certificate_kind_from_string(parts[1]);
            if (!kind)
                throw ParseError("unknown certificate kind '" + parts[1] + "'", ln);
            cert = Certificate{*kind, parts[0], {}, {}};
            in_cert = true;
            current.reset();
        } else if (current) {
            const int arity = sig[*current].arity;
            bool bare = false;
            for (auto& tok : tuple_tokens(text, ln, bare)) {
                std::vector<std::string> labels = tok;
                if (bare && tok.size() == 1 && !index.count(tok[0]) &&
                    static_cast<int>(tok[0].size()) == arity) {
                    labels.clear();
                    for (char ch : tok[0])
                        labels.emplace_back(1, ch);
                }
                if (static_cast<int>(labels.size()) != arity)
                    throw ParseError("tuple of length " + std::to_string(labels.size()) + " in relation '" +
                                         sig[*current].name + "' of arity " + std::to_string(arity),
                                     ln);
                Tuple t;
                for (auto& l : labels)
                    t.push_back(label_index(l, ln));
                tuples[*current].emplace_back(std::move(t), ln);
            }
        } else {
            throw ParseError("unexpected '" + head + "'", ln);
        }
    }
    if (in_cert)
        throw ParseError("certificate stanza without 'end'");
    if (!domain)
        throw ParseError("missing domain line");
    doc.structure = Structure(sig, *domain, name);
    for (std::size_t k = 0; k < tuples.size(); ++k)
        for (auto& [t, ln] : tuples[k])
            doc.structure.add_tuple(k, t);
    if (distinguished) {
        std::vector<int> d;
        for (auto& l : *distinguished)
            d.push_back(label_index(l, distinguished_line));
        doc.distinguished = std::move(d);
    }
    doc.certificate = cert;
    return doc;
}

bool boolean_labels(const Structure& s)
{
    for (const auto& l : s.labels())
        if (l != "0" && l != "1")
            return false;
    return !s.labels().empty();
}

void check_label(const std::string& label)
{
    if (label.empty())
        throw InvalidArgument("cannot write an empty label");
    int depth = 0;
    for (char ch : label) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '#')
            throw InvalidArgument("label '" + label + "' contains whitespace or '#'");
        if (ch == '(' || ch == '[')
            ++depth;
        if (ch == ')' || ch == ']')
            --depth;
        if (depth < 0)
            throw InvalidArgument("label '" + label + "' has unbalanced brackets");
        if (ch == ',' && depth == 0)
            throw InvalidArgument("label '" + label + "' contains a top-level comma");
    }
    if (depth != 0)
        throw InvalidArgument("label '" + label + "' has unbalanced brackets");
}

void write_body(std::ostringstream& out, const Structure& s)
{
    out << "structure " << (s.name().empty() ? "unnamed" : s.name()) << "\n";
    out << "domain";
    for (const auto& l : s.labels()) {
        check_label(l);
        out << ' ' << l;
    }
    out << "\n";
    const bool bits = boolean_labels(s);
    for (std::size_t k = 0; k < s.signature().size(); ++k) {
        out << "relation " << s.signature()[k].name << ' ' << s.signature()[k].arity << "\n";
        std::size_t on_line = 0;
        for (const auto& t : s.relation(k)) {
            if (on_line)
                out << ' ';
            if (bits) {
                for (int e : t)
                    out << s.label(e);
            } else {
                out << '(';
                for (std::size_t i = 0; i < t.size(); ++i)
                    out << (i ? "," : "") << s.label(t[i]);
                out << ')';
            }
            if (++on_line == 8) {
                out << "\n";
                on_line = 0;
            }
        }
        if (on_line)
            out << "\n";
    }
}

std::string trim_quotes(const std::string& value, int line)
{
    if (value.size() < 2 || value.front() != '"' || value.back() != '"')
        throw ParseError("expected a quoted string", line);
    return value.substr(1, value.size() - 2);
}

} // namespace

Structure parse_structure(std::string_view text) { return parse_document(text, false).structure; }

GadgetSpec parse_gadget(std::string_view text)
{
    Document doc = parse_document(text, true);
    if (!doc.distinguished)
        throw ParseError("gadget file has no 'distinguished' line");
    GadgetSpec g(std::move(doc.structure), *doc.distinguished);
    g.certificate = doc.certificate;
    return g;
}

std::string write_structure(const Structure& s)
{
    std::ostringstream out;
    write_body(out, s);
    return out.str();
}

std::string write_gadget(const GadgetSpec& g)
{
    std::ostringstream out;
    write_body(out, g.structure);
    out << "distinguished";
    for (int d : g.distinguished)
        out << ' ' << g.structure.label(d);
    out << "\n";
    if (g.certificate) {
        const Certificate& c = *g.certificate;
        out << "certificate " << c.condition << ' ' << to_string(c.kind) << "\n";
        if (!c.tags.empty()) {
            out << "tags";
            for (const auto& t : c.tags)
                out << ' ' << t;
            out << "\n";
        }
        if (!c.witness.empty())
            out << "witness " << c.witness << "\n";
        out << "end\n";
    }
    return out.str();
}

QuantumFunction parse_qfun(std::string_view text)
{
    struct Token {
        std::string text;
        int line;
    };
    std::vector<Token> tokens;
    for (const auto& [ln, line] : logical_lines(text))
        for (auto& t : split_ws(line))
            tokens.push_back({t, ln});
    if (tokens.empty() || tokens[0].text != "qfun")
        throw ParseError("expected a 'qfun' header", tokens.empty() ? 0 : tokens[0].line);
    std::size_t pos = 1;
    std::optional<std::size_t> dim;
    std::optional<std::vector<std::string>> source, target;
    std::vector<std::string>* list = nullptr;
    while (pos < tokens.size() && tokens[pos].text != "proj") {
        const auto& [t, ln] = tokens[pos++];
        if (t.rfind("d=", 0) == 0) {
            int d = parse_int(t.substr(2), ln, "d");
            if (d < 1)
                throw ParseError("dimension must be positive", ln);
            dim = static_cast<std::size_t>(d);
            list = nullptr;
        } else if (t.rfind("source=", 0) == 0 || t.rfind("target=", 0) == 0) {
            auto& slot = t[0] == 's' ? source : target;
            if (slot)
                throw ParseError("duplicate " + t.substr(0, 6) + " list", ln);
            slot.emplace();
            list = &*slot;
            if (t.size() > 7)
                list->push_back(t.substr(7));
        } else if (list) {
            list->push_back(t);
        } else {
            throw ParseError("unexpected header token '" + t + "'", ln);
        }
    }
    if (!dim || !source || !target)
        throw ParseError("qfun header needs d=, source= and target=", tokens[0].line);
    auto index_of = [](const std::vector<std::string>& labels, const std::string& l, int ln, const char* what) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l)
                return i;
        throw ParseError(std::string("unknown ") + what + " label '" + l + "'", ln);
    };
    for (const auto* labels : {&*source, &*target}) {
        std::set<std::string> seen(labels->begin(), labels->end());
        if (seen.size() != labels->size())
            throw ParseError("repeated label in qfun header", tokens[0].line);
    }
    QuantumFunction q(*source, *target, *dim);
    std::set<std::pair<std::size_t, std::size_t>> given;
    const std::size_t entries = *dim * *dim;
    while (pos < tokens.size()) {
        const int ln = tokens[pos].line;
        if (tokens[pos].text != "proj")
            throw ParseError("expected 'proj', got '" + tokens[pos].text + "'", ln);
        if (pos + 2 >= tokens.size())
            throw ParseError("truncated proj block", ln);
        std::size_t a = index_of(*source, tokens[pos + 1].text, ln, "source");
        std::size_t b = index_of(*target, tokens[pos + 2].text, ln, "target");
        if (!given.emplace(a, b).second)
            throw ParseError("duplicate proj block for (" + tokens[pos + 1].text + ", " + tokens[pos + 2].text + ")",
                             ln);
        pos += 3;
        QMat m(*dim, *dim);
        for (std::size_t k = 0; k < entries; ++k, ++pos) {
            if (pos >= tokens.size() || tokens[pos].text == "proj")
                throw ParseError("proj block has fewer than " + std::to_string(entries) + " entries", ln);
            try {
                m(k / *dim, k % *dim) = parse_rational(tokens[pos].text);
            } catch (const std::exception&) {
                throw ParseError("bad rational '" + tokens[pos].text + "'", tokens[pos].line);
            }
        }
        q(a, b) = std::move(m);
    }
    try {
        validate(q);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("not a quantum function: ") + e.what());
    }
    return q;
}

std::string write_qfun(const QuantumFunction& q)
{
    std::ostringstream out;
    out << "qfun d=" << q.dim << " source=";
    for (std::size_t i = 0; i < q.source.size(); ++i) {
        check_label(q.source[i]);
        out << (i ? " " : "") << q.source[i];
    }
    out << " target=";
    for (std::size_t i = 0; i < q.target.size(); ++i) {
        check_label(q.target[i]);
        out << (i ? " " : "") << q.target[i];
    }
    out << "\n";
    for (std::size_t a = 0; a < q.source.size(); ++a)
        for (std::size_t b = 0; b < q.target.size(); ++b) {
            const QMat& m = q(a, b);
            if (m.is_zero())
                continue;
            out << "proj " << q.source[a] << ' ' << q.target[b] << "\n";
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j)
                    out << (j ? " " : "  ") << to_string(m(i, j));
                out << "\n";
            }
        }
    return out.str();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write '" + path.string() + "'");
    out << contents;
}

namespace {

std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base)
{
    std::filesystem::path p(ref);
    return p.is_absolute() || base.empty() ? p : base / p;
}

} // namespace

Structure load_structure(const std::string& ref, const std::filesystem::path& base_dir)
{
    if (ref.rfind("catalog:", 0) == 0) {
        auto e = catalog_get(ref.substr(8));
        if (!e.is_structure())
            throw InvalidArgument("catalog entry '" + e.name + "' is not a structure");
        return e.structure();
    }
    return parse_structure(read_file(resolve(ref, base_dir)));
}

GadgetSpec load_gadget(const std::string& ref, const std::filesystem::path& base_dir)
{
    if (ref.rfind("catalog:", 0) == 0) {
        auto e = catalog_get(ref.substr(8));
        if (!e.is_gadget())
            throw InvalidArgument("catalog entry '" + e.name + "' is not a gadget");
        return e.gadget();
    }
    return parse_gadget(read_file(resolve(ref, base_dir)));
}

ReductionRecipe parse_recipe(std::string_view text, const std::filesystem::path& base_dir)
{
    ReductionRecipe r;
    std::string section;
    std::optional<Mode> mode;
    for (const auto& [ln, line] : logical_lines(text)) {
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("malformed section header", ln);
            section = line.substr(1, line.size() - 2);
            if (section != "gadgets")
                throw ParseError("unknown section [" + section + "]", ln);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = \"value\"'", ln);
        std::string key = line.substr(0, eq);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
            key.pop_back();
        std::string value = line.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value = trim_quotes(value, ln);
        try {
            if (section == "gadgets") {
                if (r.gadgets.count(key))
                    throw ParseError("duplicate gadget for '" + key + "'", ln);
                GadgetSpec g = load_gadget(value, base_dir);
                r.source_signature.add(key, static_cast<int>(g.arity()));
                r.gadgets.emplace(key, std::move(g));
            } else if (key == "mode") {
                mode = mode_from_string(value);
                if (!mode)
                    throw ParseError("unknown mode '" + value + "'", ln);
            } else if (key == "comm_gadget") {
                r.comm_gadget = load_gadget(value, base_dir);
            } else if (key == "target") {
                r.target = load_structure(value, base_dir);
            } else {
                throw ParseError("unknown key '" + key + "'", ln);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), ln);
        }
    }
    if (mode)
        r.mode = *mode;
    try {
        r.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return r;
}

ReductionRecipe read_recipe(const std::filesystem::path& path)
{
    return parse_recipe(read_file(path), path.parent_path());
}

nlohmann::json to_json(const QMat& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json to_json(const Certificate& c)
{
    return {{"condition", c.condition},
            {"kind", std::string(to_string(c.kind))},
            {"tags", c.tags},
            {"witness", c.witness}};
}

nlohmann::json tuple_json(const Structure& s, const Tuple& t)
{
    nlohmann::json out = nlohmann::json::array();
    for (int e : t)
        out.push_back(s.label(e));
    return out;
}

} // namespace qcsp
