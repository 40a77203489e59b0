package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class ThrowWithinFinallyNeg {
  void run(Channel ch) {
    try {
      ch.read();
    } catch (IOException e) {
      handle(e);
    } finally {
      try {
        ch.close();
      } catch (IOException inner) {
        handle(inner);
      }
    }
  }

  private void handle(Throwable t) {}
}
