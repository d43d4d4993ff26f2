#ifndef SGM_CSVIO_HPP
#define SGM_CSVIO_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sgm {

struct CsvTable {
    Eigen::MatrixXd values;                // n x p
    std::vector<std::string> column_names; // empty when the file has no header
};

/// Reads a rectangular numeric CSV. A non-numeric first row is treated as a
/// header. Rejects ragged rows, non-numeric or non-finite cells (errors name
/// the offending row/column), n < 4, or p < 3.
CsvTable ingest_csv(const std::string& path);

/// Writes a matrix with an optional header row.
void write_csv(const std::string& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& header = {});

} // namespace sgm

#endif
