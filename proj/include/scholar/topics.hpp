#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scholar/corpus.hpp"

namespace scholar {

struct TopicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BagOfWords {
    std::string paper_id;
    std::vector<std::pair<int, int>> words;  // (vocab index, count)
    int total = 0;
};

struct DocumentCorpus {
    std::vector<BagOfWords> docs;
    std::vector<std::string> vocabulary;  // index -> token
    std::unordered_map<std::string, int> vocab_index;
    int excluded_papers = 0;  // reduced to zero tokens
};

/// Per-paper documents from title + abstract: lowercase, split on
/// non-alphanumerics, drop stopwords and tokens shorter than 2 characters or
/// appearing in fewer than 2 documents.
DocumentCorpus build_documents(const CorpusSnapshot& c);
DocumentCorpus build_documents(const CorpusSnapshot& c,
                               const std::unordered_set<std::string>& stopwords);

struct TopicVector {
    std::string paper_id;
    std::vector<double> theta;  // non-negative, sums to 1
    bool all_oov = false;       // uniform fallback, no in-vocabulary token
};

class TopicModel {
  public:
    /// Batch variational inference. Deterministic given (seed, k, passes,
    /// corpus order); passes = 0 leaves the seeded initialization untouched.
    static TopicModel fit(const DocumentCorpus& dc, int k, unsigned seed, int passes);

    TopicVector infer(const std::vector<std::string>& tokens) const;
    TopicVector infer_bag(const std::string& paper_id,
                          const std::vector<std::pair<int, int>>& words) const;

    int k() const { return k_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    unsigned seed() const { return seed_; }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; }

    /// Row-stochastic K x V matrix.
    const std::vector<std::vector<double>>& topic_word() const { return topic_word_; }
    const std::vector<double>& pass_bounds() const { return pass_bounds_; }

    std::vector<std::pair<std::string, double>> top_words(int topic, int count) const;

    void save(const std::string& path) const;
    static TopicModel load(const std::string& path);

  private:
    int k_ = 0;
    double alpha_ = 0;
    double beta_ = 0.01;
    unsigned seed_ = 0;
    int passes_ = 0;
    std::vector<std::string> vocabulary_;
    std::unordered_map<std::string, int> vocab_index_;
    std::vector<std::vector<double>> lambda_;      // K x V variational params
    std::vector<std::vector<double>> topic_word_;  // normalized lambda rows
    std::vector<std::vector<double>> exp_elog_beta_;  // cached for inference
    std::vector<double> pass_bounds_;              // per-pass likelihood proxy

    void refresh_topic_word();
};

/// Cosine similarity of two topic distributions, clamped to [0,1].
double paper_similarity(const TopicVector& u, const TopicVector& w);

/// Cached per-paper topic vectors; unknown papers fall back to uniform.
class TopicVectorStore {
  public:
    void put(const std::string& paper_id, std::vector<double> theta);
    const std::vector<double>& get(const std::string& paper_id) const;
    double similarity(const std::string& a, const std::string& b) const;
    size_t size() const { return thetas_.size(); }
    int k() const { return k_; }

    void save_jsonl(const std::string& path) const;
    static TopicVectorStore load_jsonl(const std::string& path);
    static TopicVectorStore from_model(const TopicModel& m, const DocumentCorpus& dc);

  private:
    int k_ = 0;
    std::map<std::string, std::vector<double>> thetas_;
    mutable std::vector<double> uniform_;
};

}  // namespace scholar
