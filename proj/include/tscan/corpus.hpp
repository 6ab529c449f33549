#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tscan/mat.hpp"

namespace tscan {

struct Vocabulary {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }

  // Throws std::runtime_error on duplicate or empty tokens.
  void validate() const;
};

// One document as (token id, count) pairs; used to assemble corpora.
struct DocEntries {
  std::int64_t id = 0;  // external id, preserved through splits/subsamples
  std::vector<std::pair<std::int32_t, std::int64_t>> entries;
};

// Bag-of-words corpus in compressed sparse row form. Instances are built by
// the factory functions below and treated as immutable afterwards; within
// each document the token ids are sorted ascending and counts are positive.
class Corpus {
 public:
  Vocabulary vocab;
  std::vector<std::int64_t> doc_ids;  // size D
  std::vector<std::size_t> doc_ptr;   // size D+1, offsets into words/counts
  std::vector<std::int32_t> words;    // size nnz
  std::vector<std::int64_t> counts;   // size nnz
  std::vector<std::int64_t> doc_len;  // size D, row sums of counts
  std::int64_t total = 0;             // sum of all counts

  std::size_t num_docs() const { return doc_len.size(); }
  std::size_t vocab_size() const { return vocab.tokens.size(); }
  std::size_t nnz() const { return words.size(); }

  std::span<const std::int32_t> doc_words(std::size_t d) const {
    return {words.data() + doc_ptr[d], doc_ptr[d + 1] - doc_ptr[d]};
  }
  std::span<const std::int64_t> doc_counts(std::size_t d) const {
    return {counts.data() + doc_ptr[d], doc_ptr[d + 1] - doc_ptr[d]};
  }

  // Canonicalizes documents (sorts entries, merges duplicate token ids,
  // drops documents that end up empty) and checks token ids against the
  // vocabulary. Dropped external ids are appended to dropped_ids if given.
  static Corpus from_documents(Vocabulary vocab, std::vector<DocEntries> docs,
                               std::vector<std::int64_t>* dropped_ids = nullptr);

  // Throws std::runtime_error if any structural invariant is broken.
  void validate() const;
};

// Sparse bag-of-words file pair: a header of three integers (documents,
// vocabulary size, number of nonzero triples) followed by one
// "docID wordID count" triple per line, both ids 1-based; plus a vocabulary
// file with one token per line. Malformed content throws std::runtime_error
// with the offending line number.
Corpus load_corpus(const std::string& docword_path, const std::string& vocab_path,
                   std::vector<std::int64_t>* dropped_ids = nullptr);

// Inverse of load_corpus up to canonical ordering: loading what this writes
// reproduces the corpus exactly.
void save_corpus(const Corpus& corpus, const std::string& docword_path,
                 const std::string& vocab_path);

// Deterministic prefix/suffix split by document position (no shuffling):
// the first ceil(train_fraction * D) documents form the training side.
// Both sides keep the full vocabulary. train_fraction must lie in (0, 1)
// and both sides must end up non-empty.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction);

// Random subsample of floor(fraction * D) documents (must be at least 1),
// drawn without replacement; document order is preserved. fraction in (0, 1].
Corpus subsample_corpus(const Corpus& corpus, double fraction, std::uint64_t seed);

struct SyntheticCorpus {
  Corpus corpus;
  Mat phi;    // vocab_size x num_topics, column t = word distribution of topic t
  Mat theta;  // docs x num_topics, row d = topic distribution of document d
};

// Samples a corpus from a known topic structure: per-topic word
// distributions and per-document topic mixtures are symmetric-Dirichlet
// draws, then each token picks a topic and a word. The generating matrices
// are returned so recovery can be checked against them.
SyntheticCorpus synthesize_corpus(int num_topics, int vocab_size, int num_docs,
                                  int doc_length, double concentration,
                                  std::uint64_t seed);

}  // namespace tscan
