#pragma once

#include <filesystem>
#include <functional>
#include <string_view>

namespace voxql::store {

// The I/O steps of an atomic replace, in order.
enum class IoStep { CreateTemp, WriteFirstHalf, WriteSecondHalf, Sync, Close, Rename, SyncDirectory };

inline constexpr IoStep kAllIoSteps[] = {IoStep::CreateTemp, IoStep::WriteFirstHalf, IoStep::WriteSecondHalf,
                                         IoStep::Sync,       IoStep::Close,          IoStep::Rename,
                                         IoStep::SyncDirectory};

const char* to_string(IoStep step);

// Called before each step; throwing aborts the sequence at that point, which
// is how tests inject faults.
using FaultHook = std::function<void(IoStep)>;

// Writes content to "<target>.tmp-<nonce>" in the same directory, fsyncs it
// and renames it over target. Readers see the old or the new content, never a
// mix. On failure the temp file is removed (best effort) and the error
// rethrown; target is untouched unless the rename itself happened.
void atomic_write_file(const std::filesystem::path& target, std::string_view content, const FaultHook& hook = {});

}  // namespace voxql::store
