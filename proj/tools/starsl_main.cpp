#include <cstdio>
int main() { std::puts("starsl: not wired up yet"); return 0; }
