#include "aptmech/csv.hpp"

#include <cstdio>

namespace aptmech {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_)
        throw IoError("cannot open for writing: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

CsvWriter::~CsvWriter() {
    if (!closed_) out_.close();
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void CsvWriter::sep() {
    if (row_open_) out_ << ',';
    row_open_ = true;
}

CsvWriter& CsvWriter::field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(int v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
}

void CsvWriter::close() {
    out_.flush();
    if (!out_)
        throw IoError("write failed: " + path_);
    out_.close();
    closed_ = true;
}

}  // namespace aptmech
