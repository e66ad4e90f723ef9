#pragma once

#include <filesystem>
#include <vector>

#include "credsim/population/population.hpp"

namespace credsim {

/// Rows `id,username,password,reuseClass,optInRelatives,optInFamilyTree,mfaEnrolled`
/// with 0/1 flags. Passwords must not contain commas.
void write_accounts(const std::filesystem::path& path, const std::vector<UserAccount>& accounts);

/// Throws ConfigError with line numbers on malformed rows.
std::vector<UserAccount> load_accounts(const std::filesystem::path& path);

}  // namespace credsim
