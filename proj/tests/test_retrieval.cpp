#include <gtest/gtest.h>
TEST(Placeholder, Retrieval) {}
