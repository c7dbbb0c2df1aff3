#pragma once

// Seeded synthetic corpus with a planted lexical signal: positive paragraphs
// carry words from per-category cue lists, negatives never do.

#include "pcl/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pcl::testing {

struct SyntheticOptions {
    std::size_t documents = 200;
    double positive_rate = 0.3;
    std::uint64_t seed = 221;
};

struct SyntheticCorpus {
    std::vector<corpus::Paragraph> paragraphs;
    std::string corpus_tsv;      // binary corpus layout, no header
    std::string categories_tsv;  // category span layout, no header
};

SyntheticCorpus make_synthetic(const SyntheticOptions& options = {});

struct SyntheticFiles {
    std::filesystem::path corpus;
    std::filesystem::path categories;
};

SyntheticFiles write_synthetic(const std::filesystem::path& dir, const SyntheticOptions& options = {});

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace pcl::testing
