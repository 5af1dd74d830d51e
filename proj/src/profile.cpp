#include "mdist/profile.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mdist {

PreferenceProfile::PreferenceProfile(std::vector<std::string> alternatives, std::vector<Ranking> rankings)
    : alternatives_(std::move(alternatives)), rankings_(std::move(rankings)) {
    const std::size_t m = alternatives_.size();
    if (m == 0) throw ValidationError("profile needs at least one alternative");
    if (rankings_.empty()) throw ValidationError("profile needs at least one voter");
    {
        auto sorted = alternatives_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("duplicate alternative id");
    }
    positions_.assign(rankings_.size() * m, m);
    for (std::size_t i = 0; i < rankings_.size(); ++i) {
        const auto& r = rankings_[i];
        bool ok = r.size() == m;
        for (std::size_t k = 0; ok && k < r.size(); ++k) {
            if (r[k] >= m || positions_[i * m + r[k]] != m) ok = false;
            else positions_[i * m + r[k]] = k;
        }
        if (!ok) throw ValidationError("ranking " + std::to_string(i + 1) + " is not a permutation");
    }
}

PreferenceProfile::PreferenceProfile(std::vector<std::string> alternatives,
                                     const std::vector<std::vector<std::string>>& rankings)
    : PreferenceProfile(alternatives, [&] {
          std::vector<Ranking> out;
          out.reserve(rankings.size());
          for (std::size_t i = 0; i < rankings.size(); ++i) {
              Ranking r;
              for (const auto& name : rankings[i]) {
                  auto it = std::find(alternatives.begin(), alternatives.end(), name);
                  if (it == alternatives.end())
                      throw ValidationError("ranking " + std::to_string(i + 1) + " is not a permutation");
                  r.push_back(static_cast<std::size_t>(it - alternatives.begin()));
              }
              out.push_back(std::move(r));
          }
          return out;
      }()) {}

std::size_t PreferenceProfile::index_of(const std::string& alternative) const {
    auto it = std::find(alternatives_.begin(), alternatives_.end(), alternative);
    if (it == alternatives_.end()) throw ValidationError("unknown alternative '" + alternative + "'");
    return static_cast<std::size_t>(it - alternatives_.begin());
}

std::string PreferenceProfile::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rankings_.size(); ++i) {
        if (i) os << ';';
        for (std::size_t k = 0; k < rankings_[i].size(); ++k) {
            if (k) os << '>';
            os << alternatives_[rankings_[i][k]];
        }
    }
    return os.str();
}

// Alternatives are taken in sorted order, which matches default_alternative_names.
PreferenceProfile PreferenceProfile::from_string(const std::string& text) {
    std::vector<std::vector<std::string>> rankings;
    std::stringstream voters(text);
    std::string ballot;
    while (std::getline(voters, ballot, ';')) {
        std::vector<std::string> r;
        std::size_t start = 0;
        while (true) {
            auto pos = ballot.find('>', start);
            auto tok = ballot.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            r.push_back(tok);
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        rankings.push_back(std::move(r));
    }
    if (rankings.empty()) throw ValidationError("empty profile string");
    auto alts = rankings.front();
    std::sort(alts.begin(), alts.end());
    return PreferenceProfile(std::move(alts), rankings);
}

std::vector<int> top_counts(const PreferenceProfile& profile) {
    std::vector<int> counts(profile.num_alternatives(), 0);
    for (std::size_t i = 0; i < profile.num_voters(); ++i) ++counts[profile.top(i)];
    return counts;
}

std::vector<std::vector<int>> pairwise_counts(const PreferenceProfile& profile) {
    const std::size_t m = profile.num_alternatives();
    std::vector<std::vector<int>> counts(m, std::vector<int>(m, 0));
    for (const auto& r : profile.rankings())
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) ++counts[r[a]][r[b]];
    return counts;
}

std::vector<Ranking> all_rankings(std::size_t m) {
    Ranking r(m);
    std::iota(r.begin(), r.end(), 0);
    std::vector<Ranking> out;
    do {
        out.push_back(r);
    } while (std::next_permutation(r.begin(), r.end()));
    return out;
}

std::vector<std::string> default_alternative_names(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < m; ++k) {
        if (k < 26) names.emplace_back(1, static_cast<char>('A' + k));
        else names.push_back("A" + std::to_string(k));
    }
    return names;
}

}  // namespace mdist
