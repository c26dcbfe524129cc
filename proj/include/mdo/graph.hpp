#pragma once
// In-memory triple store with three lookup indexes: by subject, by
// (predicate, object), and by object. Set semantics throughout.
//
// Single-writer: once ingestion is done the graph is immutable and any
// number of threads may read it concurrently. No reads during writes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mdo/term.hpp"

namespace mdo {

/// One slot of a triple pattern: a concrete term or a named variable.
struct PatternSlot {
    std::variant<Term, std::string> v;

    PatternSlot(Term t) : v(std::move(t)) {}
    static PatternSlot var(std::string name) {
        PatternSlot s{Term{}};
        s.v = std::move(name);
        return s;
    }

    bool is_var() const { return std::holds_alternative<std::string>(v); }
    const std::string& var_name() const { return std::get<std::string>(v); }
    const Term& term() const { return std::get<Term>(v); }

    friend bool operator==(const PatternSlot& a, const PatternSlot& b) { return a.v == b.v; }
};

struct TriplePattern {
    PatternSlot subject;
    PatternSlot predicate;
    PatternSlot object;
};

/// Variable name -> bound term. Kept as an ordered map so serialization of a
/// binding is canonical.
using Binding = std::map<std::string, Term>;

class Graph {
public:
    Graph() = default;

    Graph(const Graph& other) : triples_(other.triples_), next_blank_(other.next_blank_) {
        reindex();
    }
    Graph& operator=(const Graph& other) {
        if (this != &other) {
            triples_ = other.triples_;
            next_blank_ = other.next_blank_;
            reindex();
        }
        return *this;
    }
    Graph(Graph&&) = default;
    Graph& operator=(Graph&&) = default;

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    /// Inserts a triple; duplicates leave the graph unchanged. Throws
    /// TermError for a literal subject or a non-IRI predicate.
    bool insert(Triple t) {
        check_well_formed(t);
        note_blank_label(t.subject);
        note_blank_label(t.object);
        auto [it, fresh] = triples_.insert(std::move(t));
        if (fresh) index_triple(*it);
        return fresh;
    }

    bool insert(Term s, Term p, Term o) {
        return insert(Triple{std::move(s), std::move(p), std::move(o)});
    }

    bool contains(const Triple& t) const { return triples_.count(t) > 0; }

    /// Iteration is in triple order (subject, predicate, object).
    const std::set<Triple>& triples() const { return triples_; }

    /// Allocates a blank node with a label unused by this graph so far.
    Term fresh_blank() { return Term::blank("b" + std::to_string(next_blank_++)); }

    /// All bindings whose substitution into `p` yields a triple of this
    /// graph, sorted by the serialization of the matched triple.
    std::vector<Binding> match(const TriplePattern& p) const {
        std::vector<const Triple*> candidates = candidates_for(p);
        std::vector<std::pair<std::string, Binding>> keyed;
        for (const Triple* t : candidates) {
            Binding b;
            if (unify(p, *t, b)) keyed.emplace_back(to_ntriples(*t), std::move(b));
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Binding> out;
        out.reserve(keyed.size());
        for (auto& [k, b] : keyed) out.push_back(std::move(b));
        return out;
    }

    /// Standard RDF merge: blank nodes of `other` are renamed apart before
    /// insertion so labels never capture.
    void merge(const Graph& other) {
        std::map<std::string, Term> rename;
        auto mapped = [&](const Term& t) -> Term {
            if (!t.is_blank()) return t;
            auto it = rename.find(t.value);
            if (it == rename.end()) it = rename.emplace(t.value, fresh_blank()).first;
            return it->second;
        };
        for (const Triple& t : other.triples_)
            insert(Triple{mapped(t.subject), t.predicate, mapped(t.object)});
    }

    /// Distinct blank node labels appearing anywhere in the graph.
    std::set<std::string> blank_labels() const {
        std::set<std::string> out;
        for (const Triple& t : triples_) {
            if (t.subject.is_blank()) out.insert(t.subject.value);
            if (t.object.is_blank()) out.insert(t.object.value);
        }
        return out;
    }

    static void check_well_formed(const Triple& t) {
        if (t.subject.is_literal()) throw TermError("triple subject must not be a literal");
        if (!t.predicate.is_iri()) throw TermError("triple predicate must be an IRI");
    }

private:
    static bool unify(const TriplePattern& p, const Triple& t, Binding& b) {
        return unify_slot(p.subject, t.subject, b) && unify_slot(p.predicate, t.predicate, b) &&
               unify_slot(p.object, t.object, b);
    }

    static bool unify_slot(const PatternSlot& s, const Term& t, Binding& b) {
        if (!s.is_var()) return s.term() == t;
        auto [it, fresh] = b.emplace(s.var_name(), t);
        return fresh || it->second == t;
    }

    // Index selection: concrete subject wins, then (predicate, object), then
    // object alone; a predicate-only pattern falls back to a scan.
    std::vector<const Triple*> candidates_for(const TriplePattern& p) const {
        if (!p.subject.is_var()) {
            auto it = by_subject_.find(p.subject.term());
            return it == by_subject_.end() ? std::vector<const Triple*>{} : it->second;
        }
        if (!p.predicate.is_var() && !p.object.is_var()) {
            auto it = by_pred_obj_.find({p.predicate.term(), p.object.term()});
            return it == by_pred_obj_.end() ? std::vector<const Triple*>{} : it->second;
        }
        if (!p.object.is_var()) {
            auto it = by_object_.find(p.object.term());
            return it == by_object_.end() ? std::vector<const Triple*>{} : it->second;
        }
        std::vector<const Triple*> all;
        all.reserve(triples_.size());
        for (const Triple& t : triples_) all.push_back(&t);
        return all;
    }

    void index_triple(const Triple& t) {
        by_subject_[t.subject].push_back(&t);
        by_pred_obj_[{t.predicate, t.object}].push_back(&t);
        by_object_[t.object].push_back(&t);
    }

    void reindex() {
        by_subject_.clear();
        by_pred_obj_.clear();
        by_object_.clear();
        for (const Triple& t : triples_) index_triple(t);
    }

    void note_blank_label(const Term& t) {
        if (!t.is_blank()) return;
        // Keep fresh_blank() ahead of any parsed "bN" label.
        const std::string& l = t.value;
        if (l.size() < 2 || l[0] != 'b') return;
        std::uint64_t n = 0;
        for (std::size_t i = 1; i < l.size(); ++i) {
            if (l[i] < '0' || l[i] > '9') return;
            n = n * 10 + static_cast<std::uint64_t>(l[i] - '0');
        }
        next_blank_ = std::max(next_blank_, n + 1);
    }

    std::set<Triple> triples_;
    std::map<Term, std::vector<const Triple*>> by_subject_;
    std::map<std::pair<Term, Term>, std::vector<const Triple*>> by_pred_obj_;
    std::map<Term, std::vector<const Triple*>> by_object_;
    std::uint64_t next_blank_ = 0;
};

}  // namespace mdo
