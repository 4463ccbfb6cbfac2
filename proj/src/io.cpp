#include "e8/graded_algebra.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace e8 {

namespace {

using nlohmann::json;

std::string int_list(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += std::to_string(v[k]);
    }
    return s + "]";
}

}  // namespace

std::string export_constants(const GradedAlgebra& a) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"model\": " << json(a.model).dump() << ",\n";
    os << "  \"group\": " << int_list(a.moduli) << ",\n";
    os << "  \"dimension\": " << a.dim() << ",\n";
    os << "  \"components\": [\n";
    for (size_t c = 0; c < a.components.size(); ++c) {
        const Component& comp = a.components[c];
        os << "    {\"degree\": " << int_list(comp.degree.residues) << ", \"dim\": " << comp.dim()
           << ", \"basis_range\": [" << comp.start << ", " << comp.end << "]}"
           << (c + 1 < a.components.size() ? ",\n" : "\n");
    }
    os << "  ],\n";
    os << "  \"basis\": [\n";
    for (int i = 0; i < a.dim(); ++i)
        os << "    " << json(a.labels[static_cast<size_t>(i)]).dump() << (i + 1 < a.dim() ? ",\n" : "\n");
    os << "  ],\n";
    os << "  \"constants\": [";
    bool first = true;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            for (const auto& [k, c] : a.row(i, j)) {
                os << (first ? "\n" : ",\n") << "    [" << i << ", " << j << ", " << k << ", \"" << to_string(c) << "\"]";
                first = false;
            }
    os << (first ? "]\n" : "\n  ]\n");
    os << "}\n";
    return os.str();
}

void export_constants(const GradedAlgebra& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw AlgebraError("cannot open '" + path + "' for writing");
    out << export_constants(a);
    if (!out) throw AlgebraError("write to '" + path + "' failed");
}

GradedAlgebra import_constants(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw AlgebraError(std::string("constants file is not valid JSON: ") + e.what());
    }
    try {
        GradedAlgebra a;
        a.model = doc.at("model").get<std::string>();
        a.moduli = doc.at("group").get<std::vector<int>>();
        for (int m : a.moduli)
            if (m < 1) throw AlgebraError("group modulus must be positive");
        a.labels = doc.at("basis").get<std::vector<std::string>>();
        int n = a.dim();
        if (doc.at("dimension").get<int>() != n) throw AlgebraError("dimension does not match the basis length");
        a.component_of.assign(static_cast<size_t>(n), -1);
        int expect = 0;
        for (const auto& jc : doc.at("components")) {
            Component c;
            c.degree = GroupElement{jc.at("degree").get<std::vector<int>>()};
            auto range = jc.at("basis_range").get<std::vector<int>>();
            if (range.size() != 2 || range[0] != expect || range[1] < range[0] || range[1] > n)
                throw AlgebraError("component ranges must tile the basis in order");
            c.start = range[0];
            c.end = range[1];
            if (jc.at("dim").get<int>() != c.dim()) throw AlgebraError("component dim does not match its range");
            if (c.degree.residues.size() != a.moduli.size()) throw AlgebraError("component degree has the wrong arity");
            for (int i = c.start; i < c.end; ++i) a.component_of[static_cast<size_t>(i)] = static_cast<int>(a.components.size());
            expect = c.end;
            a.components.push_back(std::move(c));
        }
        if (expect != n) throw AlgebraError("components do not cover the basis");

        a.resize_table();
        std::vector<Term> pending;
        int pi = -1, pj = -1;
        std::tuple<int, int, int> last{-1, -1, -1};
        for (const auto& jt : doc.at("constants")) {
            if (!jt.is_array() || jt.size() != 4) throw AlgebraError("constant records have four fields");
            int i = jt[0].get<int>(), j = jt[1].get<int>(), k = jt[2].get<int>();
            std::string text_value = jt[3].get<std::string>();
            if (i < 0 || j <= i || j >= n || k < 0 || k >= n) throw AlgebraError("constant indices out of range");
            if (std::make_tuple(i, j, k) <= last) throw AlgebraError("constants must be sorted and unique");
            last = {i, j, k};
            Scalar v = parse_scalar(text_value);
            if (is_zero(v) || to_string(v) != text_value) throw AlgebraError("constant '" + text_value + "' is zero or not in lowest terms");
            if (i != pi || j != pj) {
                if (pi >= 0) a.set_row(pi, pj, std::move(pending));
                pending.clear();
                pi = i;
                pj = j;
            }
            pending.emplace_back(k, v);
        }
        if (pi >= 0) a.set_row(pi, pj, std::move(pending));
        return a;
    } catch (const json::exception& e) {
        throw AlgebraError(std::string("malformed constants file: ") + e.what());
    } catch (const ScalarError& e) {
        throw AlgebraError(std::string("malformed constants file: ") + e.what());
    }
}

GradedAlgebra import_constants_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AlgebraError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return import_constants(ss.str());
}

}  // namespace e8
