#include <gtest/gtest.h>
TEST(Placeholder, Acceptance) {}
