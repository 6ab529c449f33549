#include "tscan/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "tscan/rng.hpp"

namespace tscan {

void Vocabulary::validate() const {
  if (tokens.size() < 2) throw std::runtime_error("vocabulary: needs at least 2 tokens");
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty()) {
      throw std::runtime_error("vocabulary: empty token at line " + std::to_string(i + 1));
    }
    if (!seen.insert(tokens[i]).second) {
      throw std::runtime_error("vocabulary: duplicate token '" + tokens[i] + "'");
    }
  }
}

Corpus Corpus::from_documents(Vocabulary vocab, std::vector<DocEntries> docs,
                              std::vector<std::int64_t>* dropped_ids) {
  vocab.validate();
  const auto w_limit = static_cast<std::int32_t>(vocab.tokens.size());

  Corpus c;
  c.vocab = std::move(vocab);
  c.doc_ptr.push_back(0);
  for (auto& doc : docs) {
    std::sort(doc.entries.begin(), doc.entries.end());
    std::size_t kept = 0;
    std::int64_t len = 0;
    for (std::size_t i = 0; i < doc.entries.size();) {
      const std::int32_t w = doc.entries[i].first;
      if (w < 0 || w >= w_limit) {
        throw std::runtime_error("corpus: token id " + std::to_string(w) +
                                 " outside vocabulary in document " + std::to_string(doc.id));
      }
      std::int64_t count = 0;
      for (; i < doc.entries.size() && doc.entries[i].first == w; ++i) {
        if (doc.entries[i].second < 0) {
          throw std::runtime_error("corpus: negative count in document " + std::to_string(doc.id));
        }
        count += doc.entries[i].second;
      }
      if (count > 0) {
        doc.entries[kept++] = {w, count};
        len += count;
      }
    }
    if (len == 0) {
      if (dropped_ids) dropped_ids->push_back(doc.id);
      continue;
    }
    for (std::size_t i = 0; i < kept; ++i) {
      c.words.push_back(doc.entries[i].first);
      c.counts.push_back(doc.entries[i].second);
    }
    c.doc_ids.push_back(doc.id);
    c.doc_len.push_back(len);
    c.total += len;
    c.doc_ptr.push_back(c.words.size());
  }
  c.validate();
  return c;
}

void Corpus::validate() const {
  vocab.validate();
  const std::size_t d = doc_len.size();
  if (doc_ids.size() != d || doc_ptr.size() != d + 1) {
    throw std::runtime_error("corpus: ragged document arrays");
  }
  if (doc_ptr.front() != 0 || doc_ptr.back() != words.size() || counts.size() != words.size()) {
    throw std::runtime_error("corpus: broken document offsets");
  }
  std::int64_t running_total = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (doc_ptr[i] >= doc_ptr[i + 1]) throw std::runtime_error("corpus: empty document survived");
    std::int64_t len = 0;
    for (std::size_t j = doc_ptr[i]; j < doc_ptr[i + 1]; ++j) {
      if (words[j] < 0 || static_cast<std::size_t>(words[j]) >= vocab.size()) {
        throw std::runtime_error("corpus: token id outside vocabulary");
      }
      if (j > doc_ptr[i] && words[j] <= words[j - 1]) {
        throw std::runtime_error("corpus: tokens not strictly ascending within a document");
      }
      if (counts[j] <= 0) throw std::runtime_error("corpus: non-positive count");
      len += counts[j];
    }
    if (len != doc_len[i]) throw std::runtime_error("corpus: document length out of sync");
    running_total += len;
  }
  if (running_total != total) throw std::runtime_error("corpus: total count out of sync");
}

namespace {

// Reads the next whitespace-separated integer token, tracking line numbers
// for error messages.
struct IntReader {
  std::istream& in;
  const std::string& path;
  long line = 1;

  std::optional<std::int64_t> next() {
    int ch = in.get();
    while (ch != EOF && (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n')) {
      if (ch == '\n') ++line;
      ch = in.get();
    }
    if (ch == EOF) return std::nullopt;
    bool negative = false;
    if (ch == '-') {
      negative = true;
      ch = in.get();
    }
    if (ch < '0' || ch > '9') {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": expected an integer");
    }
    std::int64_t value = 0;
    while (ch >= '0' && ch <= '9') {
      value = value * 10 + (ch - '0');
      if (value < 0) {
        throw std::runtime_error(path + ":" + std::to_string(line) + ": integer overflow");
      }
      ch = in.get();
    }
    if (ch != EOF) in.unget();
    return negative ? -value : value;
  }

  std::int64_t require(const char* what) {
    auto v = next();
    if (!v) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": missing " + what);
    }
    return *v;
  }
};

}  // namespace

Corpus load_corpus(const std::string& docword_path, const std::string& vocab_path,
                   std::vector<std::int64_t>* dropped_ids) {
  Vocabulary vocab;
  {
    std::ifstream in(vocab_path);
    if (!in) throw std::runtime_error("cannot open vocabulary file: " + vocab_path);
    std::string token;
    while (std::getline(in, token)) {
      if (!token.empty() && token.back() == '\r') token.pop_back();
      vocab.tokens.push_back(token);
    }
    // A trailing blank line is formatting, not a token.
    if (!vocab.tokens.empty() && vocab.tokens.back().empty()) vocab.tokens.pop_back();
  }

  std::ifstream in(docword_path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + docword_path);
  IntReader reader{in, docword_path};

  const std::int64_t num_docs = reader.require("document count");
  const std::int64_t num_words = reader.require("vocabulary size");
  const std::int64_t num_entries = reader.require("entry count");
  if (num_docs < 1 || num_words < 2 || num_entries < 0) {
    throw std::runtime_error(docword_path + ": invalid header (documents " +
                             std::to_string(num_docs) + ", vocabulary " +
                             std::to_string(num_words) + ", entries " +
                             std::to_string(num_entries) + ")");
  }
  if (static_cast<std::int64_t>(vocab.tokens.size()) != num_words) {
    throw std::runtime_error(vocab_path + ": has " + std::to_string(vocab.tokens.size()) +
                             " tokens but " + docword_path + " declares " +
                             std::to_string(num_words));
  }

  std::vector<DocEntries> docs(static_cast<std::size_t>(num_docs));
  for (std::int64_t i = 0; i < num_docs; ++i) docs[i].id = i + 1;
  for (std::int64_t i = 0; i < num_entries; ++i) {
    const std::int64_t doc_id = reader.require("document id");
    const std::int64_t word_id = reader.require("token id");
    const std::int64_t count = reader.require("count");
    if (doc_id < 1 || doc_id > num_docs) {
      throw std::runtime_error(docword_path + ":" + std::to_string(reader.line) +
                               ": document id " + std::to_string(doc_id) + " out of range");
    }
    if (word_id < 1 || word_id > num_words) {
      throw std::runtime_error(docword_path + ":" + std::to_string(reader.line) + ": token id " +
                               std::to_string(word_id) + " out of range");
    }
    if (count < 0) {
      throw std::runtime_error(docword_path + ":" + std::to_string(reader.line) +
                               ": negative count");
    }
    docs[doc_id - 1].entries.emplace_back(static_cast<std::int32_t>(word_id - 1), count);
  }
  if (reader.next()) {
    throw std::runtime_error(docword_path + ": more entries than the header declares");
  }

  return Corpus::from_documents(std::move(vocab), std::move(docs), dropped_ids);
}

void save_corpus(const Corpus& corpus, const std::string& docword_path,
                 const std::string& vocab_path) {
  {
    std::ofstream out(vocab_path);
    if (!out) throw std::runtime_error("cannot write vocabulary file: " + vocab_path);
    for (const auto& token : corpus.vocab.tokens) out << token << '\n';
  }
  std::ofstream out(docword_path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + docword_path);
  // Documents are renumbered 1..D in order; external ids are not stored in
  // this format.
  out << corpus.num_docs() << '\n' << corpus.vocab_size() << '\n' << corpus.nnz() << '\n';
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    const auto words = corpus.doc_words(d);
    const auto counts = corpus.doc_counts(d);
    for (std::size_t j = 0; j < words.size(); ++j) {
      out << (d + 1) << ' ' << (words[j] + 1) << ' ' << counts[j] << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing corpus file: " + docword_path);
}

namespace {

Corpus take_documents(const Corpus& corpus, const std::vector<std::size_t>& keep) {
  std::vector<DocEntries> docs;
  docs.reserve(keep.size());
  for (const std::size_t d : keep) {
    DocEntries doc;
    doc.id = corpus.doc_ids[d];
    const auto words = corpus.doc_words(d);
    const auto counts = corpus.doc_counts(d);
    for (std::size_t j = 0; j < words.size(); ++j) doc.entries.emplace_back(words[j], counts[j]);
    docs.push_back(std::move(doc));
  }
  return Corpus::from_documents(corpus.vocab, std::move(docs));
}

}  // namespace

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_corpus: train_fraction must lie in (0, 1)");
  }
  const std::size_t d = corpus.num_docs();
  if (d < 2) throw std::invalid_argument("split_corpus: needs at least 2 documents");
  const auto n_train =
      static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(d)));
  if (n_train == 0 || n_train >= d) {
    throw std::invalid_argument("split_corpus: split would leave an empty side");
  }
  std::vector<std::size_t> head(n_train), tail(d - n_train);
  for (std::size_t i = 0; i < n_train; ++i) head[i] = i;
  for (std::size_t i = n_train; i < d; ++i) tail[i - n_train] = i;
  return {take_documents(corpus, head), take_documents(corpus, tail)};
}

Corpus subsample_corpus(const Corpus& corpus, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("subsample_corpus: fraction must lie in (0, 1]");
  }
  const std::size_t d = corpus.num_docs();
  const auto k = static_cast<std::size_t>(fraction * static_cast<double>(d));
  if (k == 0) throw std::invalid_argument("subsample_corpus: fraction selects no documents");
  rng::Engine eng(seed);
  return take_documents(corpus, rng::sample_without_replacement(eng, d, k));
}

SyntheticCorpus synthesize_corpus(int num_topics, int vocab_size, int num_docs, int doc_length,
                                  double concentration, std::uint64_t seed) {
  if (num_topics < 1 || vocab_size < 2 || num_docs < 1 || doc_length < 1) {
    throw std::invalid_argument("synthesize_corpus: sizes must be positive (vocabulary >= 2)");
  }
  if (vocab_size < num_topics) {
    throw std::invalid_argument("synthesize_corpus: vocabulary smaller than topic count");
  }
  if (!(concentration > 0.0)) {
    throw std::invalid_argument("synthesize_corpus: concentration must be positive");
  }

  const auto w = static_cast<std::size_t>(vocab_size);
  const auto t_count = static_cast<std::size_t>(num_topics);
  const auto d_count = static_cast<std::size_t>(num_docs);

  rng::Engine eng(seed);
  SyntheticCorpus result;
  result.phi = Mat(w, t_count);
  result.theta = Mat(d_count, t_count);

  // Topic word distributions, sampled column by column through a contiguous
  // buffer (columns of the row-major phi are strided).
  std::vector<double> column(w);
  Mat phi_by_topic(t_count, w);  // row t = topic t's word distribution
  for (std::size_t t = 0; t < t_count; ++t) {
    rng::dirichlet(eng, concentration, column);
    for (std::size_t i = 0; i < w; ++i) {
      result.phi(i, t) = column[i];
      phi_by_topic(t, i) = column[i];
    }
  }

  Vocabulary vocab;
  vocab.tokens.reserve(w);
  for (std::size_t i = 0; i < w; ++i) vocab.tokens.push_back("w" + std::to_string(i));

  std::vector<DocEntries> docs(d_count);
  std::vector<std::int64_t> word_count(w);
  for (std::size_t d = 0; d < d_count; ++d) {
    rng::dirichlet(eng, concentration, result.theta.row(d));
    std::fill(word_count.begin(), word_count.end(), 0);
    for (int token = 0; token < doc_length; ++token) {
      const std::size_t topic = rng::categorical(result.theta.row(d), rng::uniform01(eng));
      const std::size_t word = rng::categorical(phi_by_topic.row(topic), rng::uniform01(eng));
      ++word_count[word];
    }
    docs[d].id = static_cast<std::int64_t>(d + 1);
    for (std::size_t i = 0; i < w; ++i) {
      if (word_count[i] > 0) docs[d].entries.emplace_back(static_cast<std::int32_t>(i), word_count[i]);
    }
  }

  result.corpus = Corpus::from_documents(std::move(vocab), std::move(docs));
  return result;
}

}  // namespace tscan
