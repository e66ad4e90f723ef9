#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "credsim/population/population.hpp"

namespace credsim {

/// Optional DNA Relatives profile fields. Each bit of a shared-fields mask
/// corresponds to one of these.
enum class ProfileField : std::uint8_t {
  AncestryReport,
  Location,
  AncestorBirthLocations,
  FamilyNames,
  ProfilePicture,
  BirthYear,
  FamilyTreeLink,
  IntroText,
};

inline constexpr std::size_t kProfileFieldCount = 8;
inline constexpr std::array<ProfileField, kProfileFieldCount> kAllProfileFields = {
    ProfileField::AncestryReport, ProfileField::Location,     ProfileField::AncestorBirthLocations,
    ProfileField::FamilyNames,    ProfileField::ProfilePicture, ProfileField::BirthYear,
    ProfileField::FamilyTreeLink, ProfileField::IntroText,
};

using FieldMask = std::uint16_t;

constexpr FieldMask field_bit(ProfileField f) noexcept {
  return static_cast<FieldMask>(1u << static_cast<unsigned>(f));
}
inline constexpr FieldMask kAllFieldsMask = (1u << kProfileFieldCount) - 1;

std::string_view to_string(ProfileField f);

enum class RelationshipLabel { Masculine, Feminine, Neutral };

/// What a connected relative sees about an account.
struct ProfileCard {
  std::string displayName;
  std::optional<Tick> lastLogin;
  RelationshipLabel relationshipLabel = RelationshipLabel::Neutral;
  std::string predictedRelationship;
  double sharedDnaPercent = 0.0;

  std::optional<std::string> ancestryReport;
  std::optional<std::string> location;
  std::optional<std::string> ancestorBirthLocations;
  std::optional<std::string> familyNames;
  std::optional<std::string> profilePictureRef;
  std::optional<int> birthYear;
  std::optional<std::string> familyTreeLink;
  std::optional<std::string> introText;

  /// Mask of the optional fields that are populated.
  FieldMask present_fields() const noexcept;
};

/// Synthesizes the card for `account` as seen by a relative. Optional fields
/// are filled only where `shared` has the corresponding bit set.
ProfileCard make_profile_card(const UserAccount& account, FieldMask shared);

}  // namespace credsim
