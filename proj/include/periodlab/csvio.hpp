#ifndef PERIODLAB_CSVIO_HPP
#define PERIODLAB_CSVIO_HPP

// Deterministic output: every float is printed with %.17g (round-trip exact),
// rows are written in a fixed order, and no wall-clock data enters a CSV.
// Identical run configurations therefore produce byte-identical files.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace periodlab {

std::string fmt_double(double v);
std::string fmt_int(std::int64_t v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace periodlab

#endif
