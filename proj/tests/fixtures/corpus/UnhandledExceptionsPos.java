package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class UnhandledExceptionsPos {
  void run(Channel ch) throws IOException {
    try {
      ch.read();
      Clock.sleep(5);
    } catch (InterruptedException e) {
      Thread.currentThread().interrupt();
    }
  }
}
