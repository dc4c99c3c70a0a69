#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "flowlab/format.hpp"
#include "flowlab/homothety.hpp"
#include "flowlab/solution.hpp"

namespace flowlab {

// One-line textual descriptors, the wire format of the CLI:
//   quadflow a=1,1 Q=1,0,1          (Q: upper triangle, row-major)
//   linflow c=1,-1 L=1,1
//   canonical1 | canonicalinf d=1,-1 | identity | zero
//   catalog pvz5 | catalog pvz1(1,1)
//   conjugated(catalog pvz5; circle)
//   linear 2,0,0,3 | scalar 2 | circle | astroid | inv(circle)
//   compose(linear 2,0,0,3; astroid)

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

inline double parse_double_token(std::string_view tok) {
    tok = trim(tok);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw DescriptorError("cannot parse number '" + std::string(tok) + "'");
    }
    return v;
}

// splits "name rest" on the first space run
inline std::pair<std::string_view, std::string_view> head_tail(std::string_view s) {
    s = trim(s);
    const std::size_t pos = s.find(' ');
    if (pos == std::string_view::npos) return {s, std::string_view{}};
    return {s.substr(0, pos), trim(s.substr(pos + 1))};
}

inline std::string_view expect_key(std::string_view tok, std::string_view key) {
    tok = trim(tok);
    if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key || tok[key.size()] != '=') {
        throw DescriptorError("expected '" + std::string(key) + "=...' in descriptor, got '" +
                              std::string(tok) + "'");
    }
    return tok.substr(key.size() + 1);
}

}  // namespace detail

inline Vec parse_vector(std::string_view text) {
    const auto parts = detail::split_top_level(detail::trim(text), ',');
    if (parts.empty() || (parts.size() == 1 && parts[0].empty())) {
        throw DescriptorError("empty vector");
    }
    Vec v(static_cast<Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        v[static_cast<Index>(i)] = detail::parse_double_token(parts[i]);
    }
    return v;
}

inline Mat parse_square_matrix(std::string_view text) {
    const Vec flat = parse_vector(text);
    Index k = 0;
    while (k * k < flat.size()) ++k;
    if (k * k != flat.size()) throw DescriptorError("matrix needs k*k row-major entries");
    Mat m(k, k);
    for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) m(i, j) = flat[i * k + j];
    }
    return m;
}

inline Homothety parse_homothety(std::string_view text) {
    text = detail::trim(text);
    auto [head, tail] = detail::head_tail(text);

    if (head == "circle") return Homothety::circle();
    if (head == "astroid") return Homothety::astroid();
    if (head == "scalar") return Homothety::scalar(detail::parse_double_token(tail));
    if (head == "linear") return Homothety::linear(parse_square_matrix(tail));

    if (text.starts_with("inv(") && text.ends_with(")")) {
        return Homothety::inverse(parse_homothety(text.substr(4, text.size() - 5)));
    }
    if (text.starts_with("compose(") && text.ends_with(")")) {
        const auto parts = detail::split_top_level(text.substr(8, text.size() - 9), ';');
        std::vector<Homothety> hs;
        hs.reserve(parts.size());
        for (auto p : parts) hs.push_back(parse_homothety(p));
        return Homothety::compose(std::move(hs));
    }
    throw DescriptorError("unknown homothety descriptor '" + std::string(text) + "'");
}

inline Solution parse_solution(std::string_view text, Index default_k = 2) {
    text = detail::trim(text);

    if (text.starts_with("conjugated(") && text.ends_with(")")) {
        const auto parts = detail::split_top_level(text.substr(11, text.size() - 12), ';');
        if (parts.size() != 2) {
            throw DescriptorError("conjugated(...) needs 'solution; homothety'");
        }
        return Solution::conjugated(parse_solution(parts[0], default_k), parse_homothety(parts[1]));
    }

    auto [head, tail] = detail::head_tail(text);
    if (head == "identity") return Solution::identity(default_k);
    if (head == "zero") return Solution::zero(default_k);
    if (head == "canonical1") return Solution::canonical1(default_k);
    if (head == "canonicalinf") {
        return Solution::canonical_inf(parse_vector(detail::expect_key(tail, "d")));
    }
    if (head == "quadflow") {
        auto [atok, qtok] = detail::head_tail(tail);
        const Vec a = parse_vector(detail::expect_key(atok, "a"));
        const Vec qflat = parse_vector(detail::expect_key(qtok, "Q"));
        std::vector<double> coeffs(qflat.data(), qflat.data() + qflat.size());
        return Solution::quad_flow(a, QuadraticForm::from_upper_triangle(coeffs));
    }
    if (head == "linflow") {
        auto [ctok, ltok] = detail::head_tail(tail);
        const Vec c = parse_vector(detail::expect_key(ctok, "c"));
        const Vec l = parse_vector(detail::expect_key(ltok, "L"));
        return Solution::lin_flow(c, LinearForm(l));
    }
    if (head == "catalog") {
        std::string_view name = detail::trim(tail);
        double a = 1.0, b = 1.0;
        const std::size_t paren = name.find('(');
        if (paren != std::string_view::npos) {
            if (!name.ends_with(")")) throw DescriptorError("unbalanced parameters in catalog name");
            const Vec params = parse_vector(name.substr(paren + 1, name.size() - paren - 2));
            if (params.size() != 2) throw DescriptorError("catalog parameters must be (a,b)");
            a = params[0];
            b = params[1];
            name = name.substr(0, paren);
        }
        using sol::CatalogId;
        if (name == "pvz1") return Solution::catalog(CatalogId::pvz1, a, b);
        if (name == "pvz2") return Solution::catalog(CatalogId::pvz2, a, b);
        if (name == "pvz3") return Solution::catalog(CatalogId::pvz3, a, b);
        if (name == "pvz4") return Solution::catalog(CatalogId::pvz4);
        if (name == "pvz5") return Solution::catalog(CatalogId::pvz5);
        if (name == "pvz6") return Solution::catalog(CatalogId::pvz6);
        if (name == "pvz7") return Solution::catalog(CatalogId::pvz7);
        if (name == "pvz8") return Solution::catalog(CatalogId::pvz8);
        throw DescriptorError("unknown catalog entry '" + std::string(name) + "'");
    }
    throw DescriptorError("unknown solution descriptor '" + std::string(text) + "'");
}

inline std::string to_descriptor(const Homothety& h) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, hom::Linear>) {
                std::string s = "linear ";
                for (Index i = 0; i < n.m.rows(); ++i) {
                    for (Index j = 0; j < n.m.cols(); ++j) {
                        if (i || j) s += ',';
                        s += fmt_double(n.m(i, j));
                    }
                }
                return s;
            } else if constexpr (std::is_same_v<T, hom::Scalar>) {
                return "scalar " + fmt_double(n.c);
            } else if constexpr (std::is_same_v<T, hom::Circle>) {
                return "circle";
            } else if constexpr (std::is_same_v<T, hom::Astroid>) {
                return "astroid";
            } else if constexpr (std::is_same_v<T, hom::Compose>) {
                std::string s = "compose(";
                for (std::size_t i = 0; i < n.parts.size(); ++i) {
                    if (i) s += "; ";
                    s += to_descriptor(n.parts[i]);
                }
                return s + ")";
            } else {
                return "inv(" + to_descriptor(*n.inner) + ")";
            }
        },
        h.node());
}

inline std::string to_descriptor(const Solution& s) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, sol::QuadFlow>) {
                std::string out = "quadflow a=" + fmt_vec(n.a) + " Q=";
                const auto tri = n.q.upper_triangle();
                for (std::size_t i = 0; i < tri.size(); ++i) {
                    if (i) out += ',';
                    out += fmt_double(tri[i]);
                }
                return out;
            } else if constexpr (std::is_same_v<T, sol::LinFlow>) {
                return "linflow c=" + fmt_vec(n.c) + " L=" + fmt_vec(n.l.coeffs());
            } else if constexpr (std::is_same_v<T, sol::Canonical1>) {
                return "canonical1";
            } else if constexpr (std::is_same_v<T, sol::CanonicalInf>) {
                return "canonicalinf d=" + fmt_vec(n.d);
            } else if constexpr (std::is_same_v<T, sol::Identity>) {
                return "identity";
            } else if constexpr (std::is_same_v<T, sol::Zero>) {
                return "zero";
            } else if constexpr (std::is_same_v<T, sol::Catalog>) {
                std::string out = std::string("catalog ") + sol::catalog_name(n.id);
                if (n.id == sol::CatalogId::pvz1 || n.id == sol::CatalogId::pvz2 ||
                    n.id == sol::CatalogId::pvz3) {
                    out += "(" + fmt_double(n.a) + "," + fmt_double(n.b) + ")";
                }
                return out;
            } else {
                return "conjugated(" + to_descriptor(*n.inner) + "; " + to_descriptor(n.ell) + ")";
            }
        },
        s.node());
}

}  // namespace flowlab
