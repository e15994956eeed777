#include <gtest/gtest.h>
TEST(Placeholder, Io) {}
