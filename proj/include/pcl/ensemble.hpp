#pragma once

// Score files and the unweighted mean-probability ensemble.
//
// Score file: UTF-8 TSV with a header. Binary tasks use "id<TAB>score";
// multi-label tasks use "id<TAB>c0<TAB>...<TAB>c6" in the fixed category
// order. Every score is a probability in [0, 1].

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace pcl::ensemble {

struct ScoreMatrix {
    std::string model_id;
    std::vector<std::string> ids;
    std::size_t columns = 1;
    std::vector<double> scores;  // row-major, ids.size() * columns

    double at(std::size_t row, std::size_t column) const { return scores[row * columns + column]; }
    std::vector<double> column(std::size_t c) const;
};

// Parses and validates: header shape, column count of 1 or 7 on every row,
// scores in [0, 1], unique ids. model_id defaults to the file stem.
ScoreMatrix validate_score_file(const std::filesystem::path& path);
ScoreMatrix parse_score_text(const std::string& contents, const std::string& source, const std::string& model_id);

// Nine decimals; re-writing the same matrix is byte-identical.
std::string format_score_file(const ScoreMatrix& matrix);
void write_score_file(const std::filesystem::path& path, const ScoreMatrix& matrix);

// Structural checks shared by the reader and the in-memory constructors.
void validate_matrix(const ScoreMatrix& matrix);

enum class Alignment {
    Strict,   // every member must carry exactly the same id set
    Lenient,  // intersect the id sets and report what was dropped
};

struct EnsembleResult {
    std::vector<std::string> ids;  // first member's order
    std::size_t columns = 1;
    std::vector<double> scores;
    std::vector<std::string> member_models;
    std::vector<std::string> warnings;

    ScoreMatrix as_matrix(std::string model_id = "ensemble") const;
};

// Per id and column, the arithmetic mean of the member scores. Members are
// summed in ascending score order, so the result does not depend on the
// member order, and it is clamped into the members' [min, max].
EnsembleResult average(const std::vector<ScoreMatrix>& members, Alignment alignment = Alignment::Strict);

// Mean of a handful of probabilities with the same guarantees as average().
double mean_probability(std::vector<double> values);

}  // namespace pcl::ensemble
