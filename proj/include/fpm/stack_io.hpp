#pragma once

#include <filesystem>

#include "fpm/forward.hpp"

namespace fpm {

/// Writes a capture stack as a directory of 16-bit PGM frames named
/// frame_0000.pgm... plus manifest.json carrying the plan, system spec,
/// object grid and per-frame maxima for dequantization.
void export_stack(const CaptureStack& stack, const std::filesystem::path& dir);

/// Reads the layout written by export_stack. Frames are restored to
/// physical units using the per-frame maxima; provenance becomes "loaded".
CaptureStack import_stack(const std::filesystem::path& dir);

}  // namespace fpm
