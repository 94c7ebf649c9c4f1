#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "w2/symfunc.hpp"
#include "w2/weight2.hpp"

namespace w2 {

// One table cell of the generating function, in either output basis.
struct OutputRecord {
    int genus = 0;
    int points = 0;
    std::string basis;  // "schur" | "power"
    // Schur basis: (partition, integer coefficient). Power basis: the
    // partition field holds the power-sum exponent list implicitly via key
    // strings; kept separately below.
    std::vector<std::pair<Partition, Int>> schur_terms;
    std::vector<std::pair<PMono, Rat>> power_terms;
};

// "s_{32}"-style rendering of one cell, partitions in ascending
// lexicographic order, empty partition as "s_{}".
inline std::string schur_cell_to_string(const SchurExpansion& cell) {
    if (cell.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, c] : cell) {
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Int a = abs(c);
        if (a != 1) os << a.get_str();
        os << "s_{" << partition_to_string(lambda) << "}";
    }
    return first ? "0" : os.str();
}

inline std::string power_cell_to_string(const SymPoly& cell) {
    if (cell.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : cell.terms()) {
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rat a = abs(c);
        if (a != 1 || m.empty()) os << rat_to_string(a);
        if (!m.empty()) {
            if (a != 1) os << "*";
            os << m.to_string();
        }
    }
    return os.str();
}

// Records for all cells g <= g_max, n <= n_max, sorted by (genus, points).
inline std::vector<OutputRecord> omega2_records(const Weight2Config& cfg,
                                                const std::string& basis) {
    if (basis != "schur" && basis != "power") throw usage_error("basis must be schur or power");
    MSeries omega = omega2_closed(cfg);
    std::vector<OutputRecord> out;
    for (int g = 0; g <= cfg.g_max; ++g) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            OutputRecord rec;
            rec.genus = g;
            rec.points = n;
            rec.basis = basis;
            SymPoly cell = omega.at(g, 0).weight_part(n);
            if (basis == "schur") {
                for (const auto& [lambda, c] : to_schur(cell, n)) rec.schur_terms.push_back({lambda, c});
            } else {
                for (const auto& [m, c] : cell.terms()) rec.power_terms.push_back({m, c});
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

inline nlohmann::json records_to_json(const std::vector<OutputRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : records) {
        nlohmann::json j;
        j["genus"] = rec.genus;
        j["points"] = rec.points;
        j["basis"] = rec.basis;
        nlohmann::json terms = nlohmann::json::array();
        if (rec.basis == "schur") {
            for (const auto& [lambda, c] : rec.schur_terms) {
                nlohmann::json t;
                t["partition"] = lambda;
                if (c.fits_slong_p()) t["coeff"] = c.get_si();
                else t["coeff"] = c.get_str();
                terms.push_back(std::move(t));
            }
        } else {
            for (const auto& [m, c] : rec.power_terms) {
                nlohmann::json t;
                nlohmann::json mono = nlohmann::json::array();
                for (const auto& [d, e] : m.factors()) mono.push_back({d, e});
                t["monomial"] = std::move(mono);
                t["coeff"] = rat_to_string(c);
                terms.push_back(std::move(t));
            }
        }
        j["terms"] = std::move(terms);
        arr.push_back(std::move(j));
    }
    return arr;
}

// CSV columns: genus,points,basis,term,coeff -- one row per term (or one
// "0" row for an empty cell), exact string coefficients.
inline std::string records_to_csv(const std::vector<OutputRecord>& records) {
    std::ostringstream os;
    os << "genus,points,basis,term,coeff\n";
    for (const auto& rec : records) {
        bool any = false;
        if (rec.basis == "schur") {
            for (const auto& [lambda, c] : rec.schur_terms) {
                std::ostringstream key;
                for (std::size_t i = 0; i < lambda.size(); ++i)
                    key << (i ? "." : "") << lambda[i];
                os << rec.genus << "," << rec.points << ",schur," << key.str() << ","
                   << c.get_str() << "\n";
                any = true;
            }
        } else {
            for (const auto& [m, c] : rec.power_terms) {
                os << rec.genus << "," << rec.points << ",power," << m.to_string() << ","
                   << rat_to_string(c) << "\n";
                any = true;
            }
        }
        if (!any) os << rec.genus << "," << rec.points << "," << rec.basis << ",0,0\n";
    }
    return os.str();
}

// Plain-text table mirroring the printed layout: rows by genus, columns by
// number of marked points.
inline std::string records_to_table(const std::vector<OutputRecord>& records,
                                    const Weight2Config& cfg) {
    std::map<std::pair<int, int>, std::string> cells;
    for (const auto& rec : records) {
        if (rec.basis == "schur") {
            SchurExpansion cell;
            for (const auto& [lambda, c] : rec.schur_terms) cell.emplace(lambda, c);
            cells[{rec.genus, rec.points}] = schur_cell_to_string(cell);
        } else {
            SymPoly cell(rec.points);
            for (const auto& [m, c] : rec.power_terms) cell.add_term(m, c);
            cells[{rec.genus, rec.points}] = power_cell_to_string(cell);
        }
    }
    std::vector<std::size_t> width(cfg.n_max + 1, 1);
    for (const auto& [key, text] : cells)
        width[key.second] = std::max(width[key.second], text.size());
    std::ostringstream os;
    os << "g\\n";
    for (int n = 0; n <= cfg.n_max; ++n) {
        os << " | ";
        std::string head = std::to_string(n);
        os << head << std::string(width[n] > head.size() ? width[n] - head.size() : 0, ' ');
    }
    os << "\n";
    for (int g = 0; g <= cfg.g_max; ++g) {
        os << std::string(3 - std::to_string(g).size(), ' ') << g;
        for (int n = 0; n <= cfg.n_max; ++n) {
            const std::string& text = cells[{g, n}];
            os << " | " << text << std::string(width[n] - text.size(), ' ');
        }
        os << "\n";
    }
    return os.str();
}

// Canonical term order for the Laurent polynomials: ascending by denominator
// signature (variables with negative exponents, lexicographic by index with
// larger exponents first; the empty denominator sorts last), then by the
// numerator part.
inline std::vector<std::pair<LMono, Rat>> laurent_sorted_terms(const PLaurent& f) {
    auto signature = [](const LMono& m, int sign) {
        std::vector<std::pair<int, int>> part;
        for (const auto& [d, e] : m.factors())
            if ((sign < 0 && e < 0) || (sign > 0 && e > 0)) part.push_back({d, std::abs(e)});
        return part;
    };
    auto cmp_part = [](const std::vector<std::pair<int, int>>& a,
                       const std::vector<std::pair<int, int>>& b) {
        // Lexicographic by variable index; same index compares exponent
        // descending; prefix order: shorter first.
        std::size_t i = 0;
        for (; i < a.size() && i < b.size(); ++i) {
            if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
            if (a[i].second != b[i].second) return a[i].second > b[i].second ? -1 : 1;
        }
        if (a.size() == b.size()) return 0;
        return a.size() < b.size() ? -1 : 1;
    };
    std::vector<std::pair<LMono, Rat>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
        auto dx = signature(x.first, -1), dy = signature(y.first, -1);
        bool ex = dx.empty(), ey = dy.empty();
        if (ex != ey) return ey;  // empty denominator sorts last
        int c = cmp_part(dx, dy);
        if (c != 0) return c < 0;
        c = cmp_part(signature(x.first, +1), signature(y.first, +1));
        return c < 0;
    });
    return terms;
}

// "-1/2*P1^2*P2^-1 + 1/2" style rendering in the canonical order.
inline std::string laurent_to_string(const PLaurent& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : laurent_sorted_terms(f)) {
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rat a = abs(c);
        if (a != 1 || m.empty()) os << rat_to_string(a);
        if (!m.empty()) {
            if (a != 1) os << "*";
            os << m.to_string();
        }
    }
    return os.str();
}

}  // namespace w2
