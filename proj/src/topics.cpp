#include "scholar/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "scholar/text.hpp"

namespace scholar {

using nlohmann::json;

namespace {

constexpr int kInferIterations = 50;
constexpr double kConvergeTol = 1e-6;

double digamma(double x) {
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    // asymptotic expansion
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    return result;
}

std::vector<std::string> paper_tokens(const PaperRecord& p,
                                      const std::unordered_set<std::string>& stop) {
    std::string text = p.title;
    if (p.abstract) {
        text.push_back(' ');
        text += *p.abstract;
    }
    std::vector<std::string> out;
    for (auto& t : tokenize(text)) {
        if (t.size() < 2) continue;
        if (stop.count(t)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

// Per-document E-step. Returns converged gamma; accumulates cnt*phi into
// sstats when provided and the per-word likelihood proxy into *bound.
std::vector<double> doc_e_step(const BagOfWords& doc, int k, double alpha,
                               const std::vector<std::vector<double>>& elog_beta,
                               std::vector<std::vector<double>>* sstats, double* bound) {
    std::vector<double> gamma(static_cast<size_t>(k),
                              alpha + static_cast<double>(doc.total) / k);
    std::vector<double> exp_elog_theta(static_cast<size_t>(k));
    std::vector<double> phinorm(doc.words.size());

    for (int iter = 0; iter < kInferIterations; ++iter) {
        double gsum = std::accumulate(gamma.begin(), gamma.end(), 0.0);
        double dg_sum = digamma(gsum);
        for (int t = 0; t < k; ++t)
            exp_elog_theta[static_cast<size_t>(t)] =
                std::exp(digamma(gamma[static_cast<size_t>(t)]) - dg_sum);

        std::vector<double> next(static_cast<size_t>(k), alpha);
        double change = 0;
        for (size_t w = 0; w < doc.words.size(); ++w) {
            auto [v, cnt] = doc.words[w];
            double norm = 1e-100;
            for (int t = 0; t < k; ++t)
                norm += exp_elog_theta[static_cast<size_t>(t)] *
                        elog_beta[static_cast<size_t>(t)][static_cast<size_t>(v)];
            phinorm[w] = norm;
            double scale = cnt / norm;
            for (int t = 0; t < k; ++t)
                next[static_cast<size_t>(t)] +=
                    scale * exp_elog_theta[static_cast<size_t>(t)] *
                    elog_beta[static_cast<size_t>(t)][static_cast<size_t>(v)];
        }
        for (int t = 0; t < k; ++t)
            change += std::abs(next[static_cast<size_t>(t)] - gamma[static_cast<size_t>(t)]);
        gamma = std::move(next);
        if (change / k < kConvergeTol) {
            // refresh phinorm against the final gamma before accumulating
            double gs = std::accumulate(gamma.begin(), gamma.end(), 0.0);
            double dgs = digamma(gs);
            for (int t = 0; t < k; ++t)
                exp_elog_theta[static_cast<size_t>(t)] =
                    std::exp(digamma(gamma[static_cast<size_t>(t)]) - dgs);
            for (size_t w = 0; w < doc.words.size(); ++w) {
                auto [v, cnt] = doc.words[w];
                (void)cnt;
                double norm = 1e-100;
                for (int t = 0; t < k; ++t)
                    norm += exp_elog_theta[static_cast<size_t>(t)] *
                            elog_beta[static_cast<size_t>(t)][static_cast<size_t>(v)];
                phinorm[w] = norm;
            }
            break;
        }
    }

    if (bound)
        for (size_t w = 0; w < doc.words.size(); ++w)
            *bound += doc.words[w].second * std::log(phinorm[w]);
    if (sstats)
        for (size_t w = 0; w < doc.words.size(); ++w) {
            auto [v, cnt] = doc.words[w];
            double scale = cnt / phinorm[w];
            for (int t = 0; t < k; ++t)
                (*sstats)[static_cast<size_t>(t)][static_cast<size_t>(v)] +=
                    scale * exp_elog_theta[static_cast<size_t>(t)] *
                    elog_beta[static_cast<size_t>(t)][static_cast<size_t>(v)];
        }
    return gamma;
}

}  // namespace

DocumentCorpus build_documents(const CorpusSnapshot& c) {
    return build_documents(c, default_stopwords());
}

DocumentCorpus build_documents(const CorpusSnapshot& c,
                               const std::unordered_set<std::string>& stopwords) {
    std::vector<std::pair<std::string, std::vector<std::string>>> raw;
    std::unordered_map<std::string, int> df;
    for (const auto& [id, p] : c.papers()) {
        auto tokens = paper_tokens(p, stopwords);
        std::unordered_set<std::string> uniq(tokens.begin(), tokens.end());
        for (const auto& t : uniq) df[t] += 1;
        raw.emplace_back(id, std::move(tokens));
    }

    DocumentCorpus dc;
    for (auto& [id, tokens] : raw) {
        std::map<std::string, int> counts;
        for (auto& t : tokens)
            if (df[t] >= 2) counts[t] += 1;
        if (counts.empty()) {
            dc.excluded_papers += 1;
            continue;
        }
        BagOfWords bag;
        bag.paper_id = id;
        for (const auto& [t, cnt] : counts) {
            auto [it, inserted] =
                dc.vocab_index.try_emplace(t, static_cast<int>(dc.vocabulary.size()));
            if (inserted) dc.vocabulary.push_back(t);
            bag.words.emplace_back(it->second, cnt);
            bag.total += cnt;
        }
        dc.docs.push_back(std::move(bag));
    }
    return dc;
}

void TopicModel::refresh_topic_word() {
    topic_word_.assign(lambda_.size(), {});
    exp_elog_beta_.assign(lambda_.size(), {});
    for (size_t t = 0; t < lambda_.size(); ++t) {
        double sum = std::accumulate(lambda_[t].begin(), lambda_[t].end(), 0.0);
        double dg_sum = digamma(sum);
        topic_word_[t].resize(lambda_[t].size());
        exp_elog_beta_[t].resize(lambda_[t].size());
        for (size_t v = 0; v < lambda_[t].size(); ++v) {
            topic_word_[t][v] = lambda_[t][v] / sum;
            exp_elog_beta_[t][v] = std::exp(digamma(lambda_[t][v]) - dg_sum);
        }
    }
}

TopicModel TopicModel::fit(const DocumentCorpus& dc, int k, unsigned seed, int passes) {
    if (k < 2) throw TopicError("topic count must be at least 2");
    if (dc.docs.empty()) throw TopicError("cannot fit a topic model on an empty corpus");
    if (passes < 0) throw TopicError("passes must be non-negative");

    TopicModel m;
    m.k_ = k;
    m.alpha_ = 1.0 / k;
    m.beta_ = 0.01;
    m.seed_ = seed;
    m.passes_ = passes;
    m.vocabulary_ = dc.vocabulary;
    m.vocab_index_ = dc.vocab_index;

    const size_t v = dc.vocabulary.size();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> noise(0.0, 1.0);
    m.lambda_.assign(static_cast<size_t>(k), std::vector<double>(v));
    for (auto& row : m.lambda_)
        for (auto& cell : row) cell = 0.5 + noise(rng);  // smoothed uniform + noise

    for (int pass = 0; pass < passes; ++pass) {
        std::vector<std::vector<double>> elog_beta(static_cast<size_t>(k),
                                                   std::vector<double>(v));
        for (int t = 0; t < k; ++t) {
            const auto& row = m.lambda_[static_cast<size_t>(t)];
            double sum = std::accumulate(row.begin(), row.end(), 0.0);
            double dg_sum = digamma(sum);
            for (size_t w = 0; w < v; ++w)
                elog_beta[static_cast<size_t>(t)][w] =
                    std::exp(digamma(row[w]) - dg_sum);
        }
        std::vector<std::vector<double>> sstats(static_cast<size_t>(k),
                                                std::vector<double>(v, 0.0));
        double bound = 0;
        for (const auto& doc : dc.docs)
            doc_e_step(doc, k, m.alpha_, elog_beta, &sstats, &bound);
        m.pass_bounds_.push_back(bound);
        for (int t = 0; t < k; ++t)
            for (size_t w = 0; w < v; ++w)
                m.lambda_[static_cast<size_t>(t)][w] =
                    m.beta_ + sstats[static_cast<size_t>(t)][w];
    }
    m.refresh_topic_word();
    return m;
}

TopicVector TopicModel::infer(const std::vector<std::string>& tokens) const {
    std::map<int, int> counts;
    for (const auto& t : tokens) {
        auto it = vocab_index_.find(t);
        if (it != vocab_index_.end()) counts[it->second] += 1;
    }
    std::vector<std::pair<int, int>> words(counts.begin(), counts.end());
    return infer_bag("", words);
}

TopicVector TopicModel::infer_bag(const std::string& paper_id,
                                  const std::vector<std::pair<int, int>>& words) const {
    TopicVector tv;
    tv.paper_id = paper_id;
    if (words.empty()) {
        tv.all_oov = true;
        tv.theta.assign(static_cast<size_t>(k_), 1.0 / k_);
        return tv;
    }
    BagOfWords bag;
    bag.paper_id = paper_id;
    bag.words = words;
    for (const auto& [v, cnt] : words) bag.total += cnt;

    auto gamma = doc_e_step(bag, k_, alpha_, exp_elog_beta_, nullptr, nullptr);
    double sum = std::accumulate(gamma.begin(), gamma.end(), 0.0);
    tv.theta.resize(gamma.size());
    for (size_t t = 0; t < gamma.size(); ++t) tv.theta[t] = gamma[t] / sum;
    return tv;
}

std::vector<std::pair<std::string, double>> TopicModel::top_words(int topic,
                                                                  int count) const {
    const auto& row = topic_word_.at(static_cast<size_t>(topic));
    std::vector<int> idx(row.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (row[static_cast<size_t>(a)] != row[static_cast<size_t>(b)])
            return row[static_cast<size_t>(a)] > row[static_cast<size_t>(b)];
        return a < b;
    });
    std::vector<std::pair<std::string, double>> out;
    for (int i = 0; i < count && i < static_cast<int>(idx.size()); ++i)
        out.emplace_back(vocabulary_[static_cast<size_t>(idx[static_cast<size_t>(i)])],
                         row[static_cast<size_t>(idx[static_cast<size_t>(i)])]);
    return out;
}

void TopicModel::save(const std::string& path) const {
    json j;
    j["format"] = "scholar-topic-model";
    j["version"] = 1;
    j["k"] = k_;
    j["alpha"] = alpha_;
    j["beta"] = beta_;
    j["seed"] = seed_;
    j["passes"] = passes_;
    j["vocabulary"] = vocabulary_;
    j["lambda"] = lambda_;
    j["pass_bounds"] = pass_bounds_;
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw TopicError("cannot write " + path);
    out << j.dump() << "\n";
}

TopicModel TopicModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TopicError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw TopicError(path + ": parse error: " + e.what());
    }
    if (j.value("format", "") != "scholar-topic-model" || j.value("version", 0) != 1)
        throw TopicError(path + ": not a version-1 topic model file");
    TopicModel m;
    m.k_ = j.at("k").get<int>();
    m.alpha_ = j.at("alpha").get<double>();
    m.beta_ = j.at("beta").get<double>();
    m.seed_ = j.at("seed").get<unsigned>();
    m.passes_ = j.at("passes").get<int>();
    m.vocabulary_ = j.at("vocabulary").get<std::vector<std::string>>();
    m.lambda_ = j.at("lambda").get<std::vector<std::vector<double>>>();
    m.pass_bounds_ = j.at("pass_bounds").get<std::vector<double>>();
    for (size_t i = 0; i < m.vocabulary_.size(); ++i)
        m.vocab_index_[m.vocabulary_[i]] = static_cast<int>(i);
    m.refresh_topic_word();
    return m;
}

double paper_similarity(const TopicVector& u, const TopicVector& w) {
    if (u.theta.size() != w.theta.size())
        throw TopicError("topic vector dimension mismatch");
    double dot = 0, nu = 0, nw = 0;
    for (size_t i = 0; i < u.theta.size(); ++i) {
        dot += u.theta[i] * w.theta[i];
        nu += u.theta[i] * u.theta[i];
        nw += w.theta[i] * w.theta[i];
    }
    if (nu == 0 || nw == 0) return 0;
    double sim = dot / (std::sqrt(nu) * std::sqrt(nw));
    return std::clamp(sim, 0.0, 1.0);
}

void TopicVectorStore::put(const std::string& paper_id, std::vector<double> theta) {
    if (k_ == 0) k_ = static_cast<int>(theta.size());
    if (static_cast<int>(theta.size()) != k_)
        throw TopicError("topic vector dimension mismatch in store");
    thetas_[paper_id] = std::move(theta);
}

const std::vector<double>& TopicVectorStore::get(const std::string& paper_id) const {
    auto it = thetas_.find(paper_id);
    if (it != thetas_.end()) return it->second;
    if (uniform_.empty())
        uniform_.assign(static_cast<size_t>(std::max(k_, 1)), 1.0 / std::max(k_, 1));
    return uniform_;
}

double TopicVectorStore::similarity(const std::string& a, const std::string& b) const {
    TopicVector u{a, get(a), false};
    TopicVector w{b, get(b), false};
    return paper_similarity(u, w);
}

void TopicVectorStore::save_jsonl(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw TopicError("cannot write " + path);
    for (const auto& [id, theta] : thetas_)
        out << json{{"paper", id}, {"theta", theta}}.dump() << "\n";
}

TopicVectorStore TopicVectorStore::load_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TopicError("cannot open " + path);
    TopicVectorStore store;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw TopicError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        store.put(j.at("paper").get<std::string>(),
                  j.at("theta").get<std::vector<double>>());
    }
    return store;
}

TopicVectorStore TopicVectorStore::from_model(const TopicModel& m,
                                              const DocumentCorpus& dc) {
    TopicVectorStore store;
    for (const auto& doc : dc.docs) {
        auto tv = m.infer_bag(doc.paper_id, doc.words);
        store.put(doc.paper_id, std::move(tv.theta));
    }
    return store;
}

}  // namespace scholar
