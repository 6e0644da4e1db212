// Command-line front end: ingest | stats | topics | compare | topk | prefix | allpairs
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scholar/alignment.hpp"
#include "scholar/career.hpp"
#include "scholar/compare.hpp"
#include "scholar/corpus.hpp"
#include "scholar/ranking.hpp"
#include "scholar/topics.hpp"
#include "scholar/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string corpus;
    std::string ranking;
    std::string papers;
    std::string merge;
    std::string model;
    std::string topics;
    std::string out;
    std::string query;
    std::string mode = "categorical";
    std::string unranked = "exclude";
    std::string venue_cost = "canonical_symmetric";
    int k = 20;
    double epsilon = 0.1;
    int topics_k = 50;
    unsigned seed = 7;
    int passes = 10;
    int min_period = 10;
    int min_papers = 1;
    int jobs = 1;
    long long budget = 10'000'000;
};

// Defaults may come from a JSON config file named by SCHOLAR_ALIGN_CONFIG;
// command-line flags override it.
void apply_env_config(RunConfig& cfg) {
    const char* path = std::getenv("SCHOLAR_ALIGN_CONFIG");
    if (!path || !*path) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open config file ") + path);
    json j;
    in >> j;
    auto str = [&](const char* key, std::string& field) {
        if (j.contains(key)) field = j.at(key).get<std::string>();
    };
    str("corpus", cfg.corpus);
    str("ranking", cfg.ranking);
    str("model", cfg.model);
    str("topics", cfg.topics);
    str("out", cfg.out);
    str("mode", cfg.mode);
    str("unranked", cfg.unranked);
    str("venue_cost", cfg.venue_cost);
    if (j.contains("k")) cfg.k = j.at("k").get<int>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("topics_k")) cfg.topics_k = j.at("topics_k").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
    if (j.contains("passes")) cfg.passes = j.at("passes").get<int>();
    if (j.contains("min_period")) cfg.min_period = j.at("min_period").get<int>();
    if (j.contains("min_papers")) cfg.min_papers = j.at("min_papers").get<int>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
}

scholar::UnrankedPolicy parse_unranked(const std::string& s) {
    if (s == "exclude") return scholar::UnrankedPolicy::Exclude;
    if (s == "score1") return scholar::UnrankedPolicy::ScoreOne;
    throw CLI::ValidationError("--unranked must be 'exclude' or 'score1'");
}

scholar::VenueCostForm parse_venue_cost(const std::string& s) {
    if (s == "canonical_symmetric") return scholar::VenueCostForm::CanonicalSymmetric;
    if (s == "literal") return scholar::VenueCostForm::Literal;
    throw CLI::ValidationError("--venue-cost must be 'canonical_symmetric' or 'literal'");
}

scholar::CompareOptions make_compare_options(const RunConfig& cfg,
                                             const scholar::TopicVectorStore* store) {
    scholar::CompareOptions opt;
    opt.align.mode = scholar::parse_align_mode(cfg.mode);
    opt.align.epsilon = cfg.epsilon;
    opt.align.venue_cost = parse_venue_cost(cfg.venue_cost);
    opt.unranked = parse_unranked(cfg.unranked);
    opt.topics = store;
    opt.jobs = cfg.jobs;
    return opt;
}

bool mode_needs_topics(const std::string& mode) {
    auto m = scholar::parse_align_mode(mode);
    return m == scholar::AlignMode::Topic || m == scholar::AlignMode::TopicPrefix;
}

int cmd_ingest(const RunConfig& cfg) {
    try {
        auto snapshot = scholar::ingest_papers(cfg.papers);
        if (!cfg.merge.empty()) {
            auto other = scholar::ingest_papers(cfg.merge);
            snapshot = scholar::merge_corpora(snapshot, other);
        }
        snapshot.persist(cfg.out);
        std::cout << "papers: " << snapshot.papers().size() << "\n"
                  << "authors: " << snapshot.authors().size() << "\n"
                  << "venues: " << snapshot.venues().size() << "\n";
        return kExitOk;
    } catch (const scholar::CorpusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;  // bad or missing input data
    }
}

int cmd_stats(const RunConfig& cfg) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto ranking = scholar::RankingTable::load_csv(cfg.ranking);
    auto report = scholar::exploratory_report(snapshot, ranking, cfg.min_period);
    fs::create_directories(cfg.out);
    {
        std::ofstream out(fs::path(cfg.out) / "report.json", std::ios::trunc);
        out << report.to_json();
    }
    report.write_tsv(cfg.out);
    std::cout << "cohort (period >= " << cfg.min_period << "): " << report.cohort_size
              << " authors\n"
              << "ranking coverage: " << ranking.coverage(snapshot) << "\n";
    return kExitOk;
}

int cmd_topics(const RunConfig& cfg) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto dc = scholar::build_documents(snapshot);
    auto model = scholar::TopicModel::fit(dc, cfg.topics_k, cfg.seed, cfg.passes);
    fs::create_directories(cfg.out);
    model.save((fs::path(cfg.out) / "model.json").string());
    auto store = scholar::TopicVectorStore::from_model(model, dc);
    store.save_jsonl((fs::path(cfg.out) / "topics.jsonl").string());
    std::cout << "documents: " << dc.docs.size() << "\n"
              << "excluded: " << dc.excluded_papers << "\n"
              << "vocabulary: " << dc.vocabulary.size() << "\n"
              << "topics: " << model.k() << "\n";
    return kExitOk;
}

scholar::TopicVectorStore load_topics_if_needed(const RunConfig& cfg) {
    if (!mode_needs_topics(cfg.mode)) return {};
    if (cfg.topics.empty())
        throw CLI::ValidationError("topic modes require --topics pointing at topics.jsonl");
    return scholar::TopicVectorStore::load_jsonl(cfg.topics);
}

int cmd_compare(const RunConfig& cfg, const std::string& a, const std::string& b) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto ranking = scholar::RankingTable::load_csv(cfg.ranking);
    auto store = load_topics_if_needed(cfg);
    auto opt = make_compare_options(cfg, mode_needs_topics(cfg.mode) ? &store : nullptr);
    double d = scholar::author_distance(snapshot, ranking, a, b, opt);
    std::cout << d << "\n";
    return kExitOk;
}

int cmd_topk(const RunConfig& cfg) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto ranking = scholar::RankingTable::load_csv(cfg.ranking);
    auto store = load_topics_if_needed(cfg);
    auto opt = make_compare_options(cfg, mode_needs_topics(cfg.mode) ? &store : nullptr);
    scholar::CandidateFilter filter;
    filter.min_period = cfg.min_period;
    filter.min_papers = cfg.min_papers;
    auto result =
        scholar::top_k_comparable(snapshot, ranking, cfg.query, cfg.k, filter, opt);
    std::string payload = result.to_json();
    if (!cfg.out.empty()) {
        fs::create_directories(cfg.out);
        std::ofstream out(fs::path(cfg.out) / "comparable.json",
                          std::ios::trunc | std::ios::binary);
        out << payload;
    }
    std::cout << payload;
    return kExitOk;
}

int cmd_prefix(const RunConfig& cfg, const std::string& senior, const std::string& junior) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto ranking = scholar::RankingTable::load_csv(cfg.ranking);
    auto policy = parse_unranked(cfg.unranked);
    scholar::AlignmentResult res;
    if (mode_needs_topics(cfg.mode)) {
        auto store = scholar::TopicVectorStore::load_jsonl(cfg.topics);
        auto s = scholar::build_score_sequence(snapshot, ranking, senior, policy);
        auto r = scholar::build_score_sequence(snapshot, ranking, junior, policy);
        scholar::AlignmentConfig acfg;
        acfg.epsilon = cfg.epsilon;
        acfg.venue_cost = parse_venue_cost(cfg.venue_cost);
        res = scholar::prefix_distance_topic(
            s, r,
            [&store](const std::string& x, const std::string& y) {
                return store.similarity(x, y);
            },
            acfg);
    } else {
        auto s = scholar::build_score_sequence(snapshot, ranking, senior, policy);
        auto r = scholar::build_score_sequence(snapshot, ranking, junior, policy);
        res = scholar::prefix_distance_categorical(s.scores(), r.scores());
    }
    std::cout << "distance: " << res.distance
              << "\nprefix_length: " << res.prefix_length.value_or(0) << "\n";
    return kExitOk;
}

int cmd_allpairs(const RunConfig& cfg) {
    auto snapshot = scholar::CorpusSnapshot::load(cfg.corpus);
    auto ranking = scholar::RankingTable::load_csv(cfg.ranking);
    auto store = load_topics_if_needed(cfg);
    scholar::AllPairsOptions opt;
    opt.compare = make_compare_options(cfg, mode_needs_topics(cfg.mode) ? &store : nullptr);
    opt.pair_budget = cfg.budget;
    scholar::CandidateFilter filter;
    filter.min_period = cfg.min_period;
    filter.min_papers = cfg.min_papers;
    fs::create_directories(cfg.out);
    long long written = scholar::all_pairs(snapshot, ranking, filter,
                                           (fs::path(cfg.out) / "pairs.tsv").string(), opt);
    std::cout << "pairs written: " << written << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        apply_env_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"Career-trajectory comparison toolkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_corpus, bool needs_ranking) {
        auto* c = sub->add_option("--corpus", cfg.corpus, "snapshot directory");
        if (needs_corpus) c->required(cfg.corpus.empty());
        auto* r = sub->add_option("--ranking", cfg.ranking, "venue ranking CSV");
        if (needs_ranking) r->required(cfg.ranking.empty());
    };
    auto add_mode_opts = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode,
                        "categorical|jaccard|topic|categorical_prefix|topic_prefix")
            ->check(CLI::IsMember({"categorical", "jaccard", "topic",
                                   "categorical_prefix", "topic_prefix"}));
        sub->add_option("--epsilon", cfg.epsilon, "topic-mode smoothing constant")
            ->check(CLI::PositiveNumber);
        sub->add_option("--venue-cost", cfg.venue_cost, "canonical_symmetric|literal");
        sub->add_option("--unranked", cfg.unranked, "exclude|score1");
        sub->add_option("--topics", cfg.topics, "topics.jsonl with cached topic vectors");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* ingest = app.add_subcommand("ingest", "build a corpus snapshot from JSONL");
    ingest->add_option("--papers", cfg.papers, "papers JSONL file")->required();
    ingest->add_option("--merge", cfg.merge, "second papers JSONL to join in");
    ingest->add_option("--out", cfg.out, "snapshot output directory")->required();

    auto* stats = app.add_subcommand("stats", "exploratory career aggregates");
    add_common(stats, true, true);
    stats->add_option("--min-period", cfg.min_period, "cohort filter in years");
    stats->add_option("--out", cfg.out, "output directory")->required(cfg.out.empty());

    auto* topics = app.add_subcommand("topics", "fit the topic model and cache vectors");
    add_common(topics, true, false);
    topics->add_option("--topics-k", cfg.topics_k, "topic count (>= 2)")
        ->check(CLI::Range(2, 1000000));
    topics->add_option("--seed", cfg.seed, "training seed");
    topics->add_option("--passes", cfg.passes, "training passes")
        ->check(CLI::NonNegativeNumber);
    topics->add_option("--out", cfg.out, "output directory")->required(cfg.out.empty());

    std::string author_a, author_b;
    auto* compare = app.add_subcommand("compare", "distance between two authors");
    add_common(compare, true, true);
    add_mode_opts(compare);
    compare->add_option("a", author_a, "first author id")->required();
    compare->add_option("b", author_b, "second author id")->required();

    auto* topk = app.add_subcommand("topk", "top-k comparable set for a query author");
    add_common(topk, true, true);
    add_mode_opts(topk);
    topk->add_option("--query", cfg.query, "query author id")->required();
    topk->add_option("--k", cfg.k, "neighbor count")->check(CLI::PositiveNumber);
    topk->add_option("--min-period", cfg.min_period, "candidate filter in years");
    topk->add_option("--min-papers", cfg.min_papers, "candidate filter");
    topk->add_option("--out", cfg.out, "output directory");

    std::string senior, junior;
    auto* prefix = app.add_subcommand("prefix", "match a junior against senior prefixes");
    add_common(prefix, true, true);
    add_mode_opts(prefix);
    prefix->add_option("senior", senior, "senior author id")->required();
    prefix->add_option("junior", junior, "junior author id")->required();

    auto* allpairs = app.add_subcommand("allpairs", "pairwise distances over the pool");
    add_common(allpairs, true, true);
    add_mode_opts(allpairs);
    allpairs->add_option("--min-period", cfg.min_period, "candidate filter in years");
    allpairs->add_option("--min-papers", cfg.min_papers, "candidate filter");
    allpairs->add_option("--budget", cfg.budget, "pair-count warning threshold");
    allpairs->add_option("--out", cfg.out, "output directory")->required(cfg.out.empty());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest) return cmd_ingest(cfg);
        if (*stats) return cmd_stats(cfg);
        if (*topics) return cmd_topics(cfg);
        if (*compare) return cmd_compare(cfg, author_a, author_b);
        if (*topk) return cmd_topk(cfg);
        if (*prefix) return cmd_prefix(cfg, senior, junior);
        if (*allpairs) return cmd_allpairs(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
