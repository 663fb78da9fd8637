#pragma once

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace draftwatch::testing {

// Runs `draftwatch serve ...` as a child process and reads the port it
// announces on stdout.
class ServeProcess {
 public:
  explicit ServeProcess(std::vector<std::string> args) {
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("fork failed");
    if (pid_ == 0) {
      dup2(fds[1], STDOUT_FILENO);
      close(fds[0]);
      close(fds[1]);
      std::vector<char*> argv;
      static std::string program = DRAFTWATCH_CLI_PATH;
      argv.push_back(program.data());
      for (auto& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      execv(program.c_str(), argv.data());
      _exit(127);
    }
    close(fds[1]);
    out_ = fdopen(fds[0], "r");
    char line[512];
    while (out_ && std::fgets(line, sizeof line, out_)) {
      first_line_ += line;
      const std::string s(line);
      const auto colon = s.rfind(':');
      if (s.rfind("listening on ", 0) == 0 && colon != std::string::npos) {
        port_ = std::stoi(s.substr(colon + 1));
        return;
      }
    }
  }

  ~ServeProcess() {
    if (pid_ > 0 && !reaped_) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
    if (out_) std::fclose(out_);
  }

  ServeProcess(const ServeProcess&) = delete;
  ServeProcess& operator=(const ServeProcess&) = delete;

  // 0 when the server never announced a port (it exited early).
  int port() const { return port_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  // Sends SIGTERM and returns the exit status (-1 on abnormal exit).
  int Terminate() {
    kill(pid_, SIGTERM);
    return Wait();
  }

  int Wait() {
    int status = 0;
    waitpid(pid_, &status, 0);
    reaped_ = true;
    if (out_) {
      char line[512];
      while (std::fgets(line, sizeof line, out_)) rest_ += line;
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  const std::string& remaining_output() const { return rest_; }

 private:
  pid_t pid_ = -1;
  bool reaped_ = false;
  FILE* out_ = nullptr;
  int port_ = 0;
  std::string first_line_;
  std::string rest_;
};

}  // namespace draftwatch::testing
