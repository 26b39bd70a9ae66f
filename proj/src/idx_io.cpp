#include "regretlab/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace regretlab {

void Dataset::validate() const {
    if (labels.empty()) throw IoError("Dataset: empty");
    if (feat_dim < 1) throw IoError("Dataset: feature dimension must be >= 1");
    require_dim(features.size(), labels.size() * static_cast<std::size_t>(feat_dim),
                "Dataset: features");
    for (int y : labels) {
        if (y < 0 || y >= num_classes) throw IoError("Dataset: label out of range");
    }
}

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw IoError("load_idx: truncated header in " + path);
    }
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::vector<std::uint8_t> read_payload(std::ifstream& in, std::size_t n, const std::string& path) {
    std::vector<std::uint8_t> buf(n);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n))) {
        throw IoError("load_idx: truncated payload in " + path);
    }
    return buf;
}

} // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw IoError("load_idx: cannot open " + images_path);
    if (const auto magic = read_be32(img, images_path); magic != kImageMagic) {
        throw IoError("load_idx: bad image magic in " + images_path);
    }
    const std::uint32_t n = read_be32(img, images_path);
    const std::uint32_t rows = read_be32(img, images_path);
    const std::uint32_t cols = read_be32(img, images_path);
    const std::size_t px = static_cast<std::size_t>(n) * rows * cols;
    const auto pixels = read_payload(img, px, images_path);

    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw IoError("load_idx: cannot open " + labels_path);
    if (const auto magic = read_be32(lab, labels_path); magic != kLabelMagic) {
        throw IoError("load_idx: bad label magic in " + labels_path);
    }
    const std::uint32_t nl = read_be32(lab, labels_path);
    if (nl != n) {
        throw IoError("load_idx: image/label count mismatch (" + std::to_string(n) + " vs " +
                      std::to_string(nl) + ")");
    }
    const auto raw_labels = read_payload(lab, nl, labels_path);

    Dataset ds;
    ds.feat_dim = static_cast<int>(rows * cols);
    ds.features.resize(px);
    for (std::size_t i = 0; i < px; ++i) {
        ds.features[i] = pixels[i] / 255.0;
    }
    ds.labels.assign(raw_labels.begin(), raw_labels.end());
    int max_label = 0;
    for (int y : ds.labels) max_label = std::max(max_label, y);
    ds.num_classes = max_label + 1;
    ds.validate();
    return ds;
}

void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols) {
    if (pixels.size() != static_cast<std::size_t>(count) * rows * cols) {
        throw IoError("write_idx_images: pixel buffer does not match count*rows*cols");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_idx_images: cannot open " + path);
    write_be32(out, kImageMagic);
    write_be32(out, count);
    write_be32(out, rows);
    write_be32(out, cols);
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError("write_idx_images: write failed for " + path);
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_idx_labels: cannot open " + path);
    write_be32(out, kLabelMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
    if (!out) throw IoError("write_idx_labels: write failed for " + path);
}

Dataset load_mnist_or_synthetic(const std::string& dir, std::size_t n_subset, std::uint64_t seed,
                                std::string* source_out) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    const fs::path mnist_img = base / "train-images-idx3-ubyte";
    const fs::path mnist_lab = base / "train-labels-idx1-ubyte";

    Dataset ds;
    if (fs::exists(mnist_img) && fs::exists(mnist_lab)) {
        ds = load_idx(mnist_img.string(), mnist_lab.string());
        if (source_out) *source_out = "mnist";
    } else {
        const auto [img, lab] =
            ensure_synthetic_idx(dir, static_cast<std::uint32_t>(n_subset), seed);
        ds = load_idx(img, lab);
        if (source_out) *source_out = "synthetic";
    }
    if (ds.size() > n_subset) {
        ds.labels.resize(n_subset);
        ds.features.resize(n_subset * static_cast<std::size_t>(ds.feat_dim));
        int max_label = 0;
        for (int y : ds.labels) max_label = std::max(max_label, y);
        ds.num_classes = std::max(ds.num_classes, max_label + 1);
    }
    ds.validate();
    return ds;
}

} // namespace regretlab
