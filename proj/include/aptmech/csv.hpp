// csv.hpp — deterministic CSV output: comma separators, "." decimal point,
// scientific notation with 17 significant digits (lossless double
// round-trip), LF line endings.

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace aptmech {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class CsvWriter {
  public:
    // Opens the file and writes the header row.  Throws IoError with the
    // path on any failure.
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();

    CsvWriter& field(double v);
    CsvWriter& field(int v);
    CsvWriter& field(const std::string& v);
    void end_row();

    // Flushes and closes; throws IoError if the stream went bad.
    void close();

    static std::string format_double(double v);

  private:
    void sep();

    std::string path_;
    std::ofstream out_;
    bool row_open_ = false;
    bool closed_ = false;
};

}  // namespace aptmech
