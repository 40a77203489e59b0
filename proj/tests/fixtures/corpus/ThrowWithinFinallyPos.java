package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class ThrowWithinFinallyPos {
  void run(Channel ch) {
    try {
      ch.read();
    } catch (IOException e) {
      handle(e);
    } finally {
      ch.close();
    }
  }

  private void handle(Throwable t) {}
}
