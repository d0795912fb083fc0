#include <cstdio>

int main() {
    std::puts("shocklab: CLI wiring pending");
    return 0;
}
