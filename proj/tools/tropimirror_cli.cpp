// Command-line surface; subcommands are wired up as the modules land.
#include <cstdio>

int main() {
    std::puts("tropimirror: not yet wired");
    return 2;
}
