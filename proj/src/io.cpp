#include "hawkes/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hawkes {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

EventSequence read_events(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw data_error("cannot open events file: " + path);
    }
    EventSequence seq;
    bool horizon_set = false;
    bool header_seen = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto pos = line.find("horizon=");
            if (pos != std::string::npos) {
                try {
                    seq.horizon = std::stod(line.substr(pos + 8));
                    horizon_set = true;
                } catch (const std::exception&) {
                    throw data_error(path + ":" + std::to_string(lineno) +
                                     ": bad horizon comment");
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "time,mark") {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": expected header 'time,mark'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw data_error(path + ":" + std::to_string(lineno) + ": expected 'time,mark' row");
        }
        double t;
        long mark;
        try {
            t = std::stod(line.substr(0, comma));
            mark = std::stol(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw data_error(path + ":" + std::to_string(lineno) + ": unparsable row");
        }
        if (!std::isfinite(t) || t <= 0.0) {
            throw data_error(path + ":" + std::to_string(lineno) + ": times must be finite and > 0");
        }
        if (!seq.times.empty() && t <= seq.times.back()) {
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": times must be strictly increasing (simultaneous events rejected)");
        }
        if (mark < 1) {
            throw data_error(path + ":" + std::to_string(lineno) + ": marks are 1-based");
        }
        seq.times.push_back(t);
        seq.marks.push_back(static_cast<int>(mark - 1));
    }
    if (!header_seen) {
        throw data_error(path + ": missing 'time,mark' header");
    }
    if (!horizon_set) {
        if (seq.times.empty()) {
            throw data_error(path + ": no events and no horizon comment");
        }
        seq.horizon = seq.times.back();
    } else if (!seq.times.empty() && seq.horizon < seq.times.back()) {
        throw data_error(path + ": horizon precedes the last event");
    }
    return seq;
}

void write_events(const std::string& path, const EventSequence& seq) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write events file: " + path);
    }
    out << "# horizon=" << format_double(seq.horizon) << "\n";
    out << "time,mark\n";
    for (std::size_t k = 0; k < seq.size(); ++k) {
        out << format_double(seq.times[k]) << ',' << seq.marks[k] + 1 << "\n";
    }
    if (!out) {
        throw data_error("write failed: " + path);
    }
}

ModelDocument read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw data_error("cannot open model file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw data_error(path + ": invalid JSON: " + e.what());
    }
    ModelDocument doc;
    try {
        const std::size_t d = j.at("d").get<std::size_t>();
        doc.model.mu = j.at("mu").get<std::vector<double>>();
        doc.model.beta = j.at("beta").get<std::vector<double>>();
        const auto rows = j.at("alpha").get<std::vector<std::vector<double>>>();
        doc.model.alpha = Matrix::from_rows(rows);
        if (doc.model.mu.size() != d || doc.model.beta.size() != d ||
            doc.model.alpha.rows() != d || doc.model.alpha.cols() != d) {
            throw data_error(path + ": shapes inconsistent with d");
        }
        doc.meta_json = j.contains("meta") ? j["meta"].dump() : "{}";
    } catch (const data_error&) {
        throw;
    } catch (const std::exception& e) {
        throw data_error(path + ": bad model document: " + e.what());
    }
    try {
        doc.model.validate();
    } catch (const std::exception& e) {
        throw data_error(path + ": " + e.what());
    }
    return doc;
}

void write_model(const std::string& path, const HawkesModel& model,
                 const std::string& meta_json) {
    nlohmann::json j;
    const std::size_t d = model.dim();
    j["d"] = d;
    j["mu"] = model.mu;
    j["beta"] = model.beta;
    std::vector<std::vector<double>> rows(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < d; ++c) rows[i][c] = model.alpha(i, c);
    }
    j["alpha"] = rows;
    try {
        j["meta"] = nlohmann::json::parse(meta_json);
    } catch (const std::exception&) {
        j["meta"] = nlohmann::json::object();
    }
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write model file: " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw data_error("write failed: " + path);
    }
}

void write_support_csv(const std::string& path, const Matrix& alpha) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write support file: " + path);
    }
    for (std::size_t i = 0; i < alpha.rows(); ++i) {
        for (std::size_t j = 0; j < alpha.cols(); ++j) {
            const double v = alpha(i, j);
            out << (v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
            out << (j + 1 == alpha.cols() ? '\n' : ',');
        }
    }
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write table: " + path);
    }
    for (std::size_t j = 0; j < header.size(); ++j) {
        out << header[j] << (j + 1 == header.size() ? '\n' : ',');
    }
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << row[j] << (j + 1 == row.size() ? '\n' : ',');
        }
    }
}

} // namespace hawkes
