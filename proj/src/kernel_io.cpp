#include "wka/kernel_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "wka/errors.hpp"

namespace wka {

namespace {

using nlohmann::json;

json matrix_to_json(const CoeffMatrix& m) {
    json a = json::array();
    for (const auto& z : m.data()) a.push_back(json::array({z.real(), z.imag()}));
    return a;
}

CoeffMatrix matrix_from_json(const json& a, int dim) {
    if (!a.is_array() || a.size() != static_cast<std::size_t>(dim) * dim)
        throw ValidationError("kernel document: matrix must hold dim*dim [re,im] pairs");
    CoeffMatrix m(dim);
    auto it = m.data().begin();
    for (const auto& pair : a) {
        if (!pair.is_array() || pair.size() != 2) throw ValidationError("kernel document: bad [re,im] pair");
        *it++ = cplx{pair[0].get<double>(), pair[1].get<double>()};
    }
    return m;
}

}  // namespace

std::string write_kernel(const InvariantKernel& k) {
    json doc;
    doc["group"] = k.group()->name();
    doc["coeff_dim"] = k.coeff_dim();
    doc["representation"] = "invariant";
    json entries = json::array();
    for (const auto& e : k.entries()) {
        json rec;
        rec["gamma"] = k.group()->format_element(e.gamma);
        rec["matrix"] = matrix_to_json(e.value);
        entries.push_back(std::move(rec));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

std::string write_kernel(const WindowedKernel& k) {
    json doc;
    doc["group"] = k.group()->name();
    doc["coeff_dim"] = k.coeff_dim();
    doc["representation"] = "windowed";
    doc["window_radius"] = k.window_radius();
    json entries = json::array();
    for (const auto& b : k.blocks()) {
        json rec;
        rec["i"] = b.i;
        rec["j"] = b.j;
        rec["matrix"] = matrix_to_json(b.value);
        entries.push_back(std::move(rec));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

AnyKernel read_kernel(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("kernel document is not valid JSON: ") + e.what());
    }
    try {
        const auto group = GroupModel::parse(doc.at("group").get<std::string>());
        const int dim = doc.at("coeff_dim").get<int>();
        const auto repr = doc.at("representation").get<std::string>();
        if (repr == "invariant") {
            std::vector<InvariantKernel::Entry> entries;
            for (const auto& rec : doc.at("entries")) {
                InvariantKernel::Entry e;
                e.gamma = group->parse_element(rec.at("gamma").get<std::string>());
                e.value = matrix_from_json(rec.at("matrix"), dim);
                entries.push_back(std::move(e));
            }
            return InvariantKernel(group, dim, std::move(entries));
        }
        if (repr == "windowed") {
            const auto radius = doc.at("window_radius").get<std::uint64_t>();
            std::vector<WindowedKernel::Block> blocks;
            for (const auto& rec : doc.at("entries")) {
                WindowedKernel::Block b;
                b.i = rec.at("i").get<std::int32_t>();
                b.j = rec.at("j").get<std::int32_t>();
                b.value = matrix_from_json(rec.at("matrix"), dim);
                blocks.push_back(std::move(b));
            }
            return WindowedKernel(group, radius, dim, std::move(blocks));
        }
        throw ValidationError("kernel document: representation must be 'invariant' or 'windowed'");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("kernel document is missing required fields: ") + e.what());
    }
}

InvariantKernel read_invariant_kernel(const std::string& text) {
    AnyKernel k = read_kernel(text);
    if (auto* inv = std::get_if<InvariantKernel>(&k)) return std::move(*inv);
    throw ValidationError("expected an invariant kernel document");
}

namespace {

struct ExprParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    double number() {
        skip_ws();
        double v = 0.0;
        const char* begin = s.data() + pos;
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) throw ValidationError("kernel expression: expected a number at '" +
                                                     std::string(s.substr(pos)) + "'");
        pos += static_cast<std::size_t>(p - begin);
        return v;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
        return std::string(s.substr(start, pos - start));
    }
};

}  // namespace

InvariantKernel parse_kernel_expr(const std::string& expr, GroupPtr group, int coeff_dim) {
    ExprParser p{expr};
    InvariantKernel result(group, coeff_dim);
    bool first = true;
    while (true) {
        p.skip_ws();
        if (p.pos >= p.s.size()) {
            if (first) throw ValidationError("kernel expression is empty");
            break;
        }
        if (!first && !p.eat('+'))
            throw ValidationError("kernel expression: expected '+' at '" + std::string(p.s.substr(p.pos)) + "'");

        double coeff = 1.0;
        p.skip_ws();
        if (p.pos < p.s.size() && (std::isdigit(static_cast<unsigned char>(p.s[p.pos])) != 0 ||
                                   p.s[p.pos] == '-' || p.s[p.pos] == '.')) {
            coeff = p.number();
            if (!p.eat('*'))
                throw ValidationError("kernel expression: scalar must be followed by '*'");
        }

        const std::string name = p.word();
        InvariantKernel atom(group, coeff_dim);
        if (name == "I") {
            atom = InvariantKernel::identity(group, coeff_dim);
        } else if (name == "shift") {
            atom = delta_kernel(group, group->generators().front(), CoeffMatrix::identity(coeff_dim));
        } else if (name == "random") {
            if (!p.eat('(')) throw ValidationError("kernel expression: random needs (R,s,seed)");
            const double radius = p.number();
            if (!p.eat(',')) throw ValidationError("kernel expression: random needs 3 arguments");
            const double s = p.number();
            if (!p.eat(',')) throw ValidationError("kernel expression: random needs 3 arguments");
            const double seed = p.number();
            if (!p.eat(')')) throw ValidationError("kernel expression: random is missing ')'");
            if (radius < 0.0 || radius != std::floor(radius))
                throw ValidationError("kernel expression: random radius must be a natural number");
            atom = random_kernel(group, static_cast<std::uint64_t>(radius), s, coeff_dim,
                                 static_cast<std::uint64_t>(seed));
        } else {
            throw ValidationError("kernel expression: unknown atom '" + name + "' (use I, shift or random(R,s,seed))");
        }

        atom = scale(atom, cplx{coeff, 0.0});
        result = first ? atom : add(result, atom);
        first = false;
    }
    return result;
}

}  // namespace wka
