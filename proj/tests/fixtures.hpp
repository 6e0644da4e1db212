#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "scholar/corpus.hpp"
#include "scholar/ranking.hpp"

namespace testutil {

inline scholar::PaperRecord paper(std::string id, std::string title, int year,
                                  std::string venue, std::vector<std::string> authors,
                                  std::optional<std::string> abstract = std::nullopt,
                                  std::optional<int> citations = std::nullopt) {
    scholar::PaperRecord p;
    p.paper_id = std::move(id);
    p.title = std::move(title);
    p.year = year;
    p.venue_key = std::move(venue);
    p.author_ids = std::move(authors);
    p.abstract = std::move(abstract);
    p.citation_count = citations;
    return p;
}

inline scholar::CorpusSnapshot snapshot_of(std::vector<scholar::PaperRecord> papers) {
    return scholar::CorpusSnapshot::from_papers(std::move(papers), {});
}

// Scoped temp directory; removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("scholar_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

inline std::string write_file(const TempDir& dir, const std::string& name,
                              const std::string& content) {
    std::string p = dir.file(name);
    std::ofstream out(p, std::ios::trunc | std::ios::binary);
    out << content;
    return p;
}

inline scholar::RankingTable ranking_of(
    const TempDir& dir, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string csv = "venue,category\n";
    for (const auto& [venue, cat] : rows) csv += venue + "," + cat + "\n";
    return scholar::RankingTable::load_csv(write_file(dir, "ranking.csv", csv));
}

inline std::vector<int> random_scores(std::mt19937& rng, size_t max_len) {
    std::uniform_int_distribution<size_t> len(0, max_len);
    std::uniform_int_distribution<int> score(1, 5);
    std::vector<int> out(len(rng));
    for (auto& s : out) s = score(rng);
    return out;
}

}  // namespace testutil
