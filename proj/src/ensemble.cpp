#include "pcl/ensemble.hpp"

#include "pcl/error.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace pcl::ensemble {

std::vector<double> ScoreMatrix::column(std::size_t c) const {
    std::vector<double> out(ids.size());
    for (std::size_t r = 0; r < ids.size(); ++r) out[r] = at(r, c);
    return out;
}

void validate_matrix(const ScoreMatrix& matrix) {
    if (matrix.columns != 1 && matrix.columns != 7) {
        throw ValidationError(matrix.model_id + ": score matrices have 1 or 7 columns, not " +
                              std::to_string(matrix.columns));
    }
    if (matrix.scores.size() != matrix.ids.size() * matrix.columns) {
        throw ValidationError(matrix.model_id + ": score count does not match ids x columns");
    }
    std::unordered_set<std::string_view> seen;
    for (std::size_t r = 0; r < matrix.ids.size(); ++r) {
        if (!seen.insert(matrix.ids[r]).second) {
            throw ValidationError(matrix.model_id + ": duplicate id '" + matrix.ids[r] + "'");
        }
        for (std::size_t c = 0; c < matrix.columns; ++c) {
            const double s = matrix.at(r, c);
            if (!(s >= 0.0 && s <= 1.0)) {
                throw ValidationError(matrix.model_id + ": score for '" + matrix.ids[r] + "' outside [0, 1]");
            }
        }
    }
}

ScoreMatrix parse_score_text(const std::string& contents, const std::string& source, const std::string& model_id) {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < contents.size();) {
        auto nl = contents.find('\n', start);
        if (nl == std::string::npos) nl = contents.size();
        lines.push_back(io::chomp(std::string_view(contents).substr(start, nl - start)));
        start = nl + 1;
    }
    if (lines.empty() || lines[0].empty()) throw ParseError(source, 1, "missing header line");

    const auto header = io::split_tabs(lines[0]);
    bool header_ok = header[0] == "id" && (header.size() == 2 || header.size() == 8);
    if (header.size() == 2) header_ok = header_ok && header[1] == "score";
    for (std::size_t c = 1; header_ok && header.size() == 8 && c < 8; ++c) {
        header_ok = header[c] == "c" + std::to_string(c - 1);
    }
    if (!header_ok) {
        throw ParseError(source, 1, "header must be 'id<TAB>score' or 'id<TAB>c0..c6'");
    }
    ScoreMatrix m;
    m.model_id = model_id;
    m.columns = header.size() - 1;

    std::unordered_map<std::string, std::size_t> first_row;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const auto fields = io::split_tabs(lines[i]);
        if (fields.size() != m.columns + 1) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": ragged row with " +
                                  std::to_string(fields.size() - 1) + " scores, expected " +
                                  std::to_string(m.columns));
        }
        std::string id(fields[0]);
        if (id.empty()) throw ValidationError(source + ":" + std::to_string(line_no) + ": empty id");
        auto [it, inserted] = first_row.emplace(id, line_no);
        if (!inserted) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate id '" + id +
                                  "' (first seen on line " + std::to_string(it->second) + ")");
        }
        for (std::size_t c = 0; c < m.columns; ++c) {
            double s = 0.0;
            if (!io::parse_double(fields[c + 1], s)) {
                throw ParseError(source, line_no, "score '" + std::string(fields[c + 1]) + "' is not a number");
            }
            if (!(s >= 0.0 && s <= 1.0)) {
                throw ValidationError(source + ":" + std::to_string(line_no) + ": score " +
                                      std::string(fields[c + 1]) + " outside [0, 1]");
            }
            m.scores.push_back(s);
        }
        m.ids.push_back(std::move(id));
    }
    return m;
}

ScoreMatrix validate_score_file(const std::filesystem::path& path) {
    return parse_score_text(io::read_file(path), path.string(), path.stem().string());
}

std::string format_score_file(const ScoreMatrix& matrix) {
    validate_matrix(matrix);
    std::string out = "id";
    if (matrix.columns == 1) {
        out += "\tscore";
    } else {
        for (std::size_t c = 0; c < matrix.columns; ++c) out += "\tc" + std::to_string(c);
    }
    out += '\n';
    for (std::size_t r = 0; r < matrix.ids.size(); ++r) {
        if (matrix.ids[r].find_first_of("\t\n\r") != std::string::npos) {
            throw ValidationError("id '" + matrix.ids[r] + "' contains a tab or line break");
        }
        out += matrix.ids[r];
        for (std::size_t c = 0; c < matrix.columns; ++c) out += '\t' + io::format_fixed(matrix.at(r, c), 9);
        out += '\n';
    }
    return out;
}

void write_score_file(const std::filesystem::path& path, const ScoreMatrix& matrix) {
    io::write_file(path, format_score_file(matrix));
}

ScoreMatrix EnsembleResult::as_matrix(std::string model_id) const {
    return ScoreMatrix{std::move(model_id), ids, columns, scores};
}

double mean_probability(std::vector<double> values) {
    if (values.empty()) throw ValidationError("mean of an empty set");
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    // The exact mean lies in [min, max]; rounding must not push it out.
    return std::clamp(mean, values.front(), values.back());
}

EnsembleResult average(const std::vector<ScoreMatrix>& members, Alignment alignment) {
    if (members.empty()) throw ValidationError("ensemble needs at least one member");
    for (const auto& m : members) validate_matrix(m);
    const std::size_t columns = members.front().columns;
    for (const auto& m : members) {
        if (m.columns != columns) {
            throw ValidationError("member '" + m.model_id + "' has " + std::to_string(m.columns) +
                                  " columns, expected " + std::to_string(columns));
        }
    }

    std::vector<std::unordered_map<std::string_view, std::size_t>> row_of(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (std::size_t r = 0; r < members[k].ids.size(); ++r) row_of[k].emplace(members[k].ids[r], r);
    }

    EnsembleResult result;
    result.columns = columns;
    for (const auto& m : members) result.member_models.push_back(m.model_id);

    const auto& first = members.front();
    for (std::size_t k = 1; k < members.size(); ++k) {
        std::size_t missing = 0;
        for (const auto& id : first.ids) missing += row_of[k].count(id) ? 0 : 1;
        const std::size_t extra = members[k].ids.size() - (first.ids.size() - missing);
        if (missing == 0 && extra == 0) continue;
        if (alignment == Alignment::Strict) {
            throw ConsistencyError("member '" + members[k].model_id + "' id set differs from '" + first.model_id +
                                   "' (" + std::to_string(missing) + " missing, " + std::to_string(extra) +
                                   " extra); use lenient alignment to intersect");
        }
        result.warnings.push_back("member '" + members[k].model_id + "': " + std::to_string(missing) +
                                  " ids of '" + first.model_id + "' missing, " + std::to_string(extra) +
                                  " extra ids ignored");
    }

    std::vector<double> cell(members.size());
    for (std::size_t r = 0; r < first.ids.size(); ++r) {
        const auto& id = first.ids[r];
        std::vector<std::size_t> rows(members.size());
        bool everywhere = true;
        for (std::size_t k = 0; k < members.size() && everywhere; ++k) {
            const auto found = row_of[k].find(id);
            if (found == row_of[k].end()) everywhere = false;
            else rows[k] = found->second;
        }
        if (!everywhere) continue;
        result.ids.push_back(id);
        for (std::size_t c = 0; c < columns; ++c) {
            for (std::size_t k = 0; k < members.size(); ++k) cell[k] = members[k].at(rows[k], c);
            result.scores.push_back(mean_probability(cell));
        }
    }
    if (result.ids.empty() && !first.ids.empty()) {
        throw ConsistencyError("ensemble members share no ids");
    }
    return result;
}

}  // namespace pcl::ensemble
