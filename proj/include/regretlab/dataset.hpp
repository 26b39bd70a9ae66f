#pragma once

#include <cstdint>
#include <string>

#include "regretlab/types.hpp"

namespace regretlab {

// In-memory classification dataset. Features are row-major n x feat_dim,
// normalized to [0,1] on ingestion.
struct Dataset {
    Vec features;
    std::vector<int> labels;
    int feat_dim = 0;
    int num_classes = 0;

    std::size_t size() const { return labels.size(); }
    const double* sample(std::size_t i) const { return features.data() + i * feat_dim; }
    void validate() const;
};

// Parses a big-endian IDX image/label file pair: magic 0x00000803 for 3-D
// image tensors (count, rows, cols), 0x00000801 for label vectors, unsigned
// byte payloads. Pixels are scaled to [0,1] by /255. Throws IoError on bad
// magic, truncated payloads, or an image/label count mismatch.
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

// Fixture/synthetic-set writers (same layout load_idx parses).
void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols);
void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels);

// Deterministic 10-class 28x28 stroke-image set with MNIST-like intensity
// statistics, written as an IDX pair under dir (skipped when the files
// already exist). Returns {images_path, labels_path}.
std::pair<std::string, std::string> ensure_synthetic_idx(const std::string& dir,
                                                         std::uint32_t count,
                                                         std::uint64_t seed);

// Loads <dir>/train-images-idx3-ubyte(+labels) when present, otherwise the
// synthetic fallback pair generated into dir. At most n_subset samples are
// kept. source_out (optional) receives "mnist" or "synthetic".
Dataset load_mnist_or_synthetic(const std::string& dir, std::size_t n_subset,
                                std::uint64_t seed, std::string* source_out = nullptr);

} // namespace regretlab
