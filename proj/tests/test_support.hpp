#pragma once
// Shared helpers for the test suites: fixture paths, file slurping, seeded
// random graph generation, and the independent brute-force oracles the
// engine is checked against.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/term.hpp"

namespace test_support {

inline std::string repo_dir() { return MDO_REPO_DIR; }
inline std::string fixture_path(const std::string& rel) {
    return repo_dir() + "/tests/fixtures/" + rel;
}
inline std::string golden_path(const std::string& rel) {
    return repo_dir() + "/tests/golden/" + rel;
}
inline std::string data_path(const std::string& rel) { return repo_dir() + "/data/" + rel; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Random graph generation (seeded, reproducible)
// ---------------------------------------------------------------------------

struct GraphGenOptions {
    std::size_t max_triples = 200;
    std::size_t max_blanks = 10;
    std::size_t iri_pool = 12;
    std::size_t predicate_pool = 6;
    bool nasty_literals = true;
};

inline mdo::Term random_literal(std::mt19937_64& rng, bool nasty) {
    std::uniform_int_distribution<int> pick(0, nasty ? 6 : 3);
    switch (pick(rng)) {
        case 0: return mdo::Term::string_literal("s" + std::to_string(rng() % 50));
        case 1:
            return mdo::Term::literal(std::to_string(static_cast<long>(rng() % 1000) - 500),
                                      mdo::xsd_iri("integer"));
        case 2: {
            std::string v = std::to_string(rng() % 100) + "." + std::to_string(rng() % 100);
            return mdo::Term::literal(v, mdo::xsd_iri("decimal"));
        }
        case 3: {
            std::string v =
                std::to_string(rng() % 10) + "." + std::to_string(rng() % 1000) + "e" +
                std::to_string(static_cast<long>(rng() % 6) - 3);
            return mdo::Term::literal(v, mdo::xsd_iri("double"));
        }
        case 4: return mdo::Term::lang_literal("hello" + std::to_string(rng() % 5), "en");
        case 5: return mdo::Term::string_literal("q\"uo\\te\n\tx\xC3\xA9");
        default: return mdo::Term::string_literal("");
    }
}

inline mdo::Graph random_graph(std::mt19937_64& rng, const GraphGenOptions& opt = {}) {
    mdo::Graph g;
    std::uniform_int_distribution<std::size_t> n_triples(0, opt.max_triples);
    std::uniform_int_distribution<std::size_t> n_blanks(0, opt.max_blanks);
    std::size_t triples = n_triples(rng);
    std::size_t blanks = n_blanks(rng);
    auto iri = [&](std::size_t i) { return mdo::Term::iri("http://ex.org/n" + std::to_string(i)); };
    auto pred = [&](std::size_t i) {
        return mdo::Term::iri("http://ex.org/p" + std::to_string(i));
    };
    for (std::size_t i = 0; i < triples; ++i) {
        mdo::Term s = (blanks > 0 && rng() % 3 == 0)
                          ? mdo::Term::blank("n" + std::to_string(rng() % blanks))
                          : iri(rng() % opt.iri_pool);
        mdo::Term p = pred(rng() % opt.predicate_pool);
        mdo::Term o;
        switch (rng() % 3) {
            case 0:
                o = (blanks > 0 && rng() % 2 == 0)
                        ? mdo::Term::blank("n" + std::to_string(rng() % blanks))
                        : iri(rng() % opt.iri_pool);
                break;
            case 1: o = iri(rng() % opt.iri_pool); break;
            default: o = random_literal(rng, opt.nasty_literals);
        }
        g.insert(s, p, o);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// Pattern matching by linear scan, no indexes.
inline std::vector<mdo::Binding> scan_match(const mdo::Graph& g, const mdo::TriplePattern& p) {
    std::vector<std::pair<std::string, mdo::Binding>> keyed;
    for (const mdo::Triple& t : g.triples()) {
        mdo::Binding b;
        bool ok = true;
        auto slot = [&](const mdo::PatternSlot& s, const mdo::Term& term) {
            if (!s.is_var()) {
                if (!(s.term() == term)) ok = false;
                return;
            }
            auto it = b.find(s.var_name());
            if (it == b.end())
                b.emplace(s.var_name(), term);
            else if (!(it->second == term))
                ok = false;
        };
        slot(p.subject, t.subject);
        if (ok) slot(p.predicate, t.predicate);
        if (ok) slot(p.object, t.object);
        if (ok) keyed.emplace_back(mdo::to_ntriples(t), b);
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<mdo::Binding> out;
    for (auto& [k, b] : keyed) out.push_back(std::move(b));
    return out;
}

/// Isomorphism by exhaustive search over every label bijection (no pruning).
/// Only usable for graphs with at most ~8 blank nodes.
inline bool brute_force_isomorphic(const mdo::Graph& g1, const mdo::Graph& g2) {
    auto l1 = g1.blank_labels();
    auto l2 = g2.blank_labels();
    if (l1.size() != l2.size()) return false;
    std::vector<std::string> a(l1.begin(), l1.end()), b(l2.begin(), l2.end());
    std::sort(b.begin(), b.end());
    auto renamed = [&](const mdo::Graph& g, const std::vector<std::string>& from,
                       const std::vector<std::string>& to) {
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
        std::set<mdo::Triple> out;
        for (const mdo::Triple& t : g.triples()) {
            mdo::Triple r = t;
            if (r.subject.is_blank()) r.subject.value = m.at(r.subject.value);
            if (r.object.is_blank()) r.object.value = m.at(r.object.value);
            out.insert(r);
        }
        return out;
    };
    std::set<mdo::Triple> target;
    for (const mdo::Triple& t : g2.triples()) target.insert(t);
    do {
        if (renamed(g1, a, b) == target) return true;
    } while (std::next_permutation(b.begin(), b.end()));
    return false;
}

}  // namespace test_support
