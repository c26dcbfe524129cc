#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdo/term.hpp"

namespace mdo {

// Ordered prefix table. Order is preserved so serializer output is stable.
class PrefixMap {
public:
    void set_base(std::string iri) {
        if (!is_absolute_iri(iri)) throw TermError("base IRI must be absolute: " + iri);
        base_ = std::move(iri);
    }
    const std::optional<std::string>& base() const { return base_; }

    /// Binds `label` to `iri`; re-binding an existing label replaces it.
    void bind(const std::string& label, std::string iri) {
        if (!is_absolute_iri(iri)) throw TermError("namespace IRI must be absolute: " + iri);
        for (auto& [l, ns] : entries_) {
            if (l == label) {
                ns = std::move(iri);
                return;
            }
        }
        entries_.emplace_back(label, std::move(iri));
    }

    std::optional<std::string> expand(const std::string& label) const {
        for (const auto& [l, ns] : entries_)
            if (l == label) return ns;
        return std::nullopt;
    }

    /// Longest-namespace compaction: returns (label, local) when some bound
    /// namespace is a proper prefix of `iri`.
    std::optional<std::pair<std::string, std::string>> compact(const std::string& iri) const {
        const std::pair<std::string, std::string>* best = nullptr;
        for (const auto& e : entries_) {
            if (iri.size() > e.second.size() && iri.compare(0, e.second.size(), e.second) == 0) {
                if (!best || e.second.size() > best->second.size()) best = &e;
            }
        }
        if (!best) return std::nullopt;
        return std::make_pair(best->first, iri.substr(best->second.size()));
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty() && !base_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::optional<std::string> base_;
};

/// Resolve `ref` against `base` (simplified RFC 3986; enough for the minting
/// and fixture IRIs this toolkit deals in).
inline std::string resolve_iri(const std::string& ref, const std::optional<std::string>& base) {
    if (is_absolute_iri(ref) || !base) return ref;
    const std::string& b = *base;
    auto scheme_end = b.find(':');
    if (ref.rfind("//", 0) == 0) return b.substr(0, scheme_end + 1) + ref;
    // authority = scheme "://" host
    std::size_t path_start = b.find('/', scheme_end + 3 <= b.size() ? scheme_end + 3 : b.size());
    if (!ref.empty() && ref[0] == '/') {
        if (path_start == std::string::npos) return b + ref;
        return b.substr(0, path_start) + ref;
    }
    if (!ref.empty() && ref[0] == '#') {
        auto frag = b.find('#');
        return (frag == std::string::npos ? b : b.substr(0, frag)) + ref;
    }
    auto last_slash = b.rfind('/');
    if (last_slash == std::string::npos || last_slash < scheme_end) return b + "/" + ref;
    return b.substr(0, last_slash + 1) + ref;
}

}  // namespace mdo
