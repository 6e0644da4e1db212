#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scholar {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PaperRecord {
    std::string paper_id;
    std::string title;
    std::optional<std::string> abstract;
    int year = 0;
    std::string venue_key;
    std::vector<std::string> author_ids;
    std::optional<int> citation_count;
};

struct AuthorRecord {
    std::string author_id;  // normalized name; the corpus has no native keys
    std::string display_name;
    std::vector<std::string> paper_ids;  // sorted by (year, paper_id)
};

struct VenueRecord {
    std::string venue_key;
    std::set<std::string> full_names;
};

/// Immutable joined store of authors, papers and venues. Construct through
/// ingest_papers / merge_corpora / load_snapshot; safe to share across threads.
class CorpusSnapshot {
  public:
    const std::map<std::string, AuthorRecord>& authors() const { return authors_; }
    const std::map<std::string, PaperRecord>& papers() const { return papers_; }
    const std::map<std::string, VenueRecord>& venues() const { return venues_; }
    const std::map<std::string, std::string>& provenance() const { return provenance_; }

    const PaperRecord& paper(const std::string& id) const;
    const AuthorRecord& author(const std::string& id) const;
    bool has_author(const std::string& id) const { return authors_.count(id) > 0; }

    /// Papers of one author, ascending by (year, paper_id).
    std::vector<PaperRecord> author_papers(const std::string& author_id) const;

    /// Builds a snapshot from paper records; recomputes author and venue
    /// tables and checks referential integrity.
    static CorpusSnapshot from_papers(
        std::vector<PaperRecord> papers, std::map<std::string, std::string> provenance,
        const std::map<std::string, std::string>& display_names = {});

    void persist(const std::string& dir) const;
    static CorpusSnapshot load(const std::string& dir);

  private:
    CorpusSnapshot() = default;

    std::map<std::string, AuthorRecord> authors_;
    std::map<std::string, PaperRecord> papers_;
    std::map<std::string, VenueRecord> venues_;
    std::map<std::string, std::string> provenance_;  // source label -> digest
};

/// Parse one-paper-per-line JSONL into a snapshot. Venues are deduplicated by
/// normalized key, authors by normalized name string (no disambiguation: two
/// people sharing a name collapse into one author, a documented limitation).
CorpusSnapshot ingest_papers(const std::string& path);

/// Join two corpora on (normalized title, normalized author-name multiset).
/// On a match `a` wins conflicts; missing abstract/citation fields are filled
/// from `b`. Unmatched papers from both sides are kept.
CorpusSnapshot merge_corpora(const CorpusSnapshot& a, const CorpusSnapshot& b);

}  // namespace scholar
